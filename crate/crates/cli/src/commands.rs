use littlewood_core::exactcount::{
    derivative_root_at_i_prob, exhaustive_census_with_budget, hunt_exhaustive, joint_atom, max_atom_weighted,
    root_at_integer_prob, spectral_null_count, union_prob, JointAtomQuery,
};
use littlewood_core::lclt::{self, InversionConfig};
use littlewood_core::montecarlo::{self, CoeffSampler, Event};
use littlewood_core::numtheory;
use littlewood_core::{CoeffDist, IntPoly, Sign};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::record::{Header, Record};
use crate::{BoundsCommand, Command, CommandError, ExactCommand, HuntMode};

type Out = Result<Vec<Record>, CommandError>;

fn header(command: &str, args: &impl Serialize) -> Header {
    Header::new(command, serde_json::to_value(args).expect("arguments serialize"))
}

fn f64_of(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn coeff_string(p: &IntPoly) -> String {
    p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn dispatch(cmd: &Command) -> Out {
    match cmd {
        Command::Census(a) => {
            let h = header("census", a);
            a.n.values()
                .into_iter()
                .map(|n| {
                    let budget = a.budget.map(BigUint::from).unwrap_or_else(|| a.alphabet.default_budget());
                    let c = exhaustive_census_with_budget(n, a.alphabet, &budget)?;
                    Ok(h.record()
                        .set("n", n)
                        .exact("alphabet", c.alphabet)
                        .exact("total", &c.total)
                        .exact("repeated", &c.repeated)
                        .exact("at_minus1", &c.at_minus1)
                        .exact("at_zero", &c.at_zero)
                        .exact("at_plus1", &c.at_plus1)
                        .exact("noncyclotomic", &c.noncyclotomic)
                        .exact("cyclotomic_other", &c.cyclotomic_other)
                        .exact("all_zero", &c.all_zero)
                        .exact("special_union", &c.special_union)
                        .exact("repeated_fraction", BigRational::new(c.repeated.into(), c.total.into())))
                })
                .collect()
        }
        Command::Snull(a) => {
            let h = header("snull", a);
            Ok(a.m.values().into_iter().map(|m| h.record().set("m", m).exact("count", spectral_null_count(m))).collect())
        }
        Command::Exact(e) => exact(e),
        Command::Asym(a) => {
            let h = header("asym", a);
            a.n.values()
                .into_iter()
                .map(|n| {
                    let l = lclt::l_constant(n, &a.dist)?;
                    let p = lclt::asymptotic_prob(n, &a.dist)?;
                    Ok(h.record().set("n", n).exact("dist", &a.dist).real("L", l).real("prob", p))
                })
                .collect()
        }
        Command::Invert(a) => {
            let h = header("invert", a);
            let dist = CoeffDist::pm1(a.p.clone())?;
            let p = f64_of(&a.p);
            a.n.values()
                .into_iter()
                .map(|n| {
                    let mut cfg = InversionConfig::for_degree(n);
                    cfg.grid1 = a.grid1.unwrap_or(cfg.grid1);
                    cfg.grid2 = a.grid2.unwrap_or(cfg.grid2);
                    let lattice = lclt::lattice_point_prob(n, p, &cfg)?;
                    let exact = joint_atom(&JointAtomQuery { n, dist: dist.clone(), sign: Sign::Minus, target: (0, 0) });
                    let gauss = lclt::gaussian_point_mass(&lclt::moments(n, &dist, Sign::Minus)?)?;
                    Ok(h.record()
                        .set("n", n)
                        .set("grid1", cfg.grid1)
                        .set("grid2", cfg.grid2)
                        .real("lattice_prob", lattice)
                        .exact("exact", &exact)
                        .real("exact_f64", f64_of(&exact))
                        .real("abs_diff", (lattice - f64_of(&exact)).abs())
                        .real("gaussian_mass", gauss))
                })
                .collect()
        }
        Command::Moments(a) => {
            let h = header("moments", a);
            a.base
                .n
                .values()
                .into_iter()
                .map(|n| {
                    let m = lclt::moments(n, &a.base.dist, a.sign)?;
                    Ok(h.record()
                        .set("n", n)
                        .exact("sign", a.sign)
                        .exact("mu1", &m.mu[0])
                        .exact("mu2", &m.mu[1])
                        .exact("sigma11", &m.sigma[0][0])
                        .exact("sigma12", &m.sigma[0][1])
                        .exact("sigma22", &m.sigma[1][1]))
                })
                .collect()
        }
        Command::Mc(a) => {
            let h = header("mc", a);
            a.base
                .n
                .values()
                .into_iter()
                .map(|n| {
                    let e = montecarlo::estimate(a.event, n, &a.base.dist, a.trials, a.seed)?;
                    Ok(estimate_record(h.record().set("n", n), &e))
                })
                .collect()
        }
        Command::Bounds(b) => bounds(b),
        Command::Minpolys(a) => {
            let h = header("minpolys", a);
            let mut out = Vec::new();
            for d in a.d.values() {
                let floor = numtheory::dobrowolski_floor(d as u64, a.c_prime)?;
                for c in numtheory::enumerate_candidates(d)? {
                    out.push(
                        h.record()
                            .set("d", d)
                            .set("minpoly", coeff_string(&c.minpoly))
                            .real("mahler", c.mahler)
                            .real("log_mahler", c.mahler.ln())
                            .set("is_cyclotomic", c.is_cyclotomic)
                            .set("cyclotomic_index", c.cyclotomic_index)
                            .real("max_conjugate_modulus", c.max_conjugate_modulus)
                            .real("dobrowolski_floor", floor),
                    );
                }
            }
            Ok(out)
        }
        Command::Hunt(a) => {
            let h = header("hunt", a);
            a.n.values()
                .into_iter()
                .map(|n| {
                    let report = match a.mode {
                        HuntMode::Exhaustive => {
                            let budget = a.budget.map(BigUint::from).unwrap_or_else(|| a.alphabet.default_budget());
                            hunt_exhaustive(n, a.alphabet, &budget)?
                        }
                        HuntMode::Random => montecarlo::hunt_random(n, &a.dist, a.trials, a.seed)?,
                    };
                    let hits: Vec<Value> = report.hits.iter().map(|c| Value::from(c.clone())).collect();
                    Ok(h.record()
                        .set("n", n)
                        .set("scanned", report.scanned)
                        .set("hit_count", report.hits.len())
                        .set("hits", hits))
                })
                .collect()
        }
        Command::Report(a) => report(a),
    }
}

fn estimate_record(r: Record, e: &montecarlo::Estimate) -> Record {
    r.exact("event", e.event)
        .set("trials", e.trials)
        .set("hits", e.hits)
        .set("all_zero", e.all_zero)
        .real("p_hat", e.p_hat)
        .real("ci95_low", e.ci95_low)
        .real("ci95_high", e.ci95_high)
        .set("seed", e.seed)
}

fn exact(cmd: &ExactCommand) -> Out {
    match cmd {
        ExactCommand::Union(a) => {
            let h = header("exact union", a);
            a.n.values()
                .into_iter()
                .map(|n| {
                    let p = union_prob(n, &a.dist)?;
                    Ok(h.record().set("n", n).real("union_prob_f64", f64_of(&p)).exact("union_prob", p))
                })
                .collect()
        }
        ExactCommand::Joint(a) => {
            let h = header("exact joint", a);
            Ok(a.base
                .n
                .values()
                .into_iter()
                .map(|n| {
                    let q = JointAtomQuery { n, dist: a.base.dist.clone(), sign: a.sign, target: (a.a, a.b) };
                    let p = joint_atom(&q);
                    h.record()
                        .set("n", n)
                        .exact("sign", a.sign)
                        .set("a", a.a)
                        .set("b", a.b)
                        .real("prob_f64", f64_of(&p))
                        .exact("prob", p)
                })
                .collect())
        }
        ExactCommand::Atom(a) => {
            let h = header("exact atom", a);
            let lists: Vec<Vec<i64>> = match (&a.weights, &a.upto) {
                (Some(w), _) => vec![w.0.clone()],
                (None, Some(r)) => r.values().into_iter().map(|n| (1..=n as i64).collect()).collect(),
                (None, None) => unreachable!("clap requires one of them"),
            };
            lists
                .into_iter()
                .map(|w| {
                    let m = max_atom_weighted(&w, &a.dist)?;
                    let count = w.len();
                    let scaled = f64_of(&m) * (count as f64).powf(1.5);
                    Ok(h.record()
                        .set("weights", count)
                        .real("max_atom_f64", f64_of(&m))
                        .real("scaled_n_3_2", scaled)
                        .exact("max_atom", m))
                })
                .collect()
        }
        ExactCommand::DerivI(a) => {
            let h = header("exact deriv-i", a);
            Ok(a.n
                .values()
                .into_iter()
                .map(|n| {
                    let p = derivative_root_at_i_prob(n, &a.dist);
                    let f = f64_of(&p);
                    h.record().set("n", n).real("prob_f64", f).real("scaled_n3", f * (n as f64).powi(3)).exact("prob", p)
                })
                .collect())
        }
        ExactCommand::RootAt(a) => {
            let h = header("exact root-at", a);
            a.base
                .n
                .values()
                .into_iter()
                .map(|n| {
                    let p = root_at_integer_prob(n, &a.base.dist, a.a)?;
                    Ok(h.record().set("n", n).set("a", a.a).real("prob_f64", f64_of(&p)).exact("prob", p))
                })
                .collect()
        }
    }
}

fn bounds(cmd: &BoundsCommand) -> Out {
    match cmd {
        BoundsCommand::Jensen(a) => {
            let h = header("bounds jensen", a);
            let v = numtheory::jensen_bound(a.r)?;
            Ok(vec![h.record().real("r", a.r).real("bound", v).real("floor", v.floor())])
        }
        BoundsCommand::P3(a) => {
            let h = header("bounds p3", a);
            if let Some(c) = &a.coeffs {
                let p = IntPoly::from_i64(&c.0);
                let k = numtheory::p3_square_divisor(&p, a.b, a.k_max)?;
                return Ok(vec![h
                    .record()
                    .exact("p_at_3", p.eval_i64(3))
                    .set("k", k)
                    .set("trials", Value::Null)
                    .set("frequency", Value::Null)
                    .set("gamma", Value::Null)
                    .set("gamma_vacuous", Value::Null)]);
            }
            let g = numtheory::gamma_exponent(&a.dist)?;
            let sampler = CoeffSampler::new(&a.dist);
            // validate the bounds once before sampling
            numtheory::p3_square_divisor(&IntPoly::one(), a.b, a.k_max)?;
            let hits: u64 = (0..a.trials)
                .into_par_iter()
                .map(|t| {
                    let c = sampler.draw_vec(a.n + 1, &mut montecarlo::trial_rng(a.seed, t));
                    let p = IntPoly::from_i64(&c);
                    numtheory::p3_square_divisor(&p, a.b, a.k_max).ok().flatten().is_some() as u64
                })
                .sum();
            Ok(vec![h
                .record()
                .set("p_at_3", Value::Null)
                .set("k", Value::Null)
                .set("trials", a.trials)
                .real("frequency", hits as f64 / a.trials.max(1) as f64)
                .real("gamma", g.gamma)
                .set("gamma_vacuous", g.vacuous)])
        }
        BoundsCommand::Unity(a) => {
            let h = header("bounds unity", a);
            Ok(vec![h.record().real("bound", numtheory::unity_root_prob_bound(a.n, a.k, a.d, a.c)?)])
        }
        BoundsCommand::Offcircle(a) => {
            let h = header("bounds offcircle", a);
            let j0 = numtheory::off_circle_j0(a.modulus)?;
            Ok(vec![h.record().set("j0", j0).real("bound", numtheory::off_circle_prob_bound(a.n, a.modulus)?)])
        }
    }
}

fn report(a: &crate::ReportArgs) -> Out {
    let h = header("report", a);
    let pm1 = a.dist.is_pm1();
    let p_plus = f64_of(a.dist.p_plus());
    a.n.values()
        .into_iter()
        .map(|n| {
            let union = union_prob(n, &a.dist)?;
            let d_plus = joint_atom(&JointAtomQuery { n, dist: a.dist.clone(), sign: Sign::Plus, target: (0, 0) });
            let d_minus = joint_atom(&JointAtomQuery { n, dist: a.dist.clone(), sign: Sign::Minus, target: (0, 0) });
            // the n^-2 law describes the +-1 events; with mass at zero it
            // has no finite-n counterpart here
            let asym = if a.dist.p_zero().to_f64() == Some(0.0) { lclt::asymptotic_prob(n, &a.dist).ok() } else { None };
            let lattice = if pm1 && (n + 1) % 4 == 0 && n <= a.invert_max {
                Some(lclt::lattice_point_prob(n, p_plus, &InversionConfig::for_degree(n))?)
            } else {
                None
            };
            let union_f = f64_of(&union);
            let mut r = h
                .record()
                .set("n", n)
                .exact("union_prob", &union)
                .real("union_prob_f64", union_f)
                .real("d_plus1_f64", f64_of(&d_plus))
                .real("d_minus1_f64", f64_of(&d_minus))
                .set("asym_prob", asym)
                .set("ratio_union_to_asym", asym.map(|x| union_f / x))
                .set("lattice_d_minus1", lattice);
            if a.trials > 0 {
                let e = montecarlo::estimate(Event::DoubleRoot, n, &a.dist, a.trials, a.seed)?;
                r = r.real("mc_p_hat", e.p_hat).real("mc_ci95_low", e.ci95_low).real("mc_ci95_high", e.ci95_high);
            } else {
                r = r.set("mc_p_hat", Value::Null).set("mc_ci95_low", Value::Null).set("mc_ci95_high", Value::Null);
            }
            Ok(r)
        })
        .collect()
}
