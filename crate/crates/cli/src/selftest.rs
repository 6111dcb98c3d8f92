//! Built-in regression and oracle suites.
//!
//! `quick` covers the worked example and small property samples; `full` adds
//! the closed-form sweeps, exhaustive search, the construction sweep and the
//! enumeration cross-check.

use std::time::Instant;

use num_bigint::BigUint;
use subset_base::combinatorics::ceil_log2;
use subset_base::search::brute_force_base_size;
use subset_base::verify::{
    double_count_check, is_base, neighborhood_partition, stabilizer_order_bruteforce,
};
use subset_base::{
    are_isomorphic, base_size, binomial, closed_form, construct, construct_base, find_min_l,
    nearly_regular_uniform, random_irrepeating, ActionSpec, BaseFamily, Group,
};

use crate::exit::{Failure, Outcome};
use crate::{Level, SelftestArgs};

type Check = Result<(), String>;
type Suite = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn worked_example() -> Check {
    let spec = ActionSpec::symmetric(18, 7).map_err(err)?;
    let w = find_min_l(18, 7).map_err(err)?;
    ensure((w.l, w.k) == (5, 3), || {
        format!("witness ({}, {})", w.l, w.k)
    })?;
    let expected = BaseFamily::new(
        18,
        vec![
            vec![2, 7, 8, 9, 10, 17],
            vec![3, 7, 11, 12, 13, 17],
            vec![4, 8, 11, 14, 15, 18],
            vec![5, 9, 12, 14, 16, 18],
            vec![6, 10, 13, 15, 16, 17, 18],
        ],
    )
    .map_err(err)?;
    ensure(is_base(&expected, &spec.at_most()).map_err(err)?, || {
        "example family rejected".into()
    })?;
    let c = construct(&spec.at_most()).map_err(err)?;
    ensure(c.family == expected, || {
        format!("pipeline produced {:?}", c.family.sets())
    })?;
    let alt = ActionSpec::alternating(19, 7).map_err(err)?;
    ensure(base_size(&alt).map_err(err)? == 5, || "A_19,7".into())
}

fn small_constructions() -> Check {
    for r in 1..=5u64 {
        for n in (2 * r..=2 * r + 30).step_by(3) {
            for group in [Group::Symmetric, Group::Alternating] {
                let n = if group == Group::Alternating {
                    n + 1
                } else {
                    n
                };
                for uniform in [true, false] {
                    let spec = ActionSpec::new(group, n, r, uniform).map_err(err)?;
                    let f = construct_base(&spec).map_err(|e| format!("{spec}: {e}"))?;
                    ensure(is_base(&f, &spec).map_err(err)?, || {
                        format!("{spec}: not a base")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn equality_at_two_r() -> Check {
    for r in 2..=64 {
        let spec = ActionSpec::symmetric(2 * r, r).map_err(err)?;
        let b = base_size(&spec).map_err(err)?;
        ensure(b == ceil_log2(2 * r), || format!("r = {r}: {b}"))?;
    }
    Ok(())
}

fn duals(count: u64) -> Check {
    let mut done = 0;
    for seed in 0..count * 4 {
        if done == count {
            break;
        }
        let l = 1 + (seed % 10) as u32;
        let n = l as usize + (seed % 5) as usize;
        let Ok(h) = random_irrepeating(l, n, n, seed) else {
            continue;
        };
        let d = h.dual().map_err(err)?;
        ensure(
            d.vertex_count() as usize == h.edge_count()
                && d.edge_count() == h.vertex_count() as usize,
            || format!("seed {seed}: size swap"),
        )?;
        let dd = d.dual().map_err(err)?;
        ensure(are_isomorphic(&dd, &h).map_err(err)?, || {
            format!("seed {seed}: double dual")
        })?;
        done += 1;
    }
    ensure(done == count, || {
        format!("only {done} of {count} hypergraphs generated")
    })
}

fn closed_forms(r_max: u64, span: u64) -> Check {
    for r in 2..=r_max {
        for n in 2 * r..=(r * r + r) / 2 + span * r {
            if let Some((form, value)) = closed_form(n, r) {
                let b = base_size(&ActionSpec::symmetric(n, r).map_err(err)?).map_err(err)?;
                ensure(b == value, || {
                    format!("{} at n = {n}, r = {r}: {value} vs {b}", form.name())
                })?;
            }
        }
    }
    Ok(())
}

fn exhaustive_agreement() -> Check {
    for r in [2u64, 3] {
        let top = if r == 2 { 9 } else { 8 };
        for n in 2 * r..=top {
            for group in [Group::Symmetric, Group::Alternating] {
                for uniform in [true, false] {
                    let Ok(spec) = ActionSpec::new(group, n, r, uniform) else {
                        continue;
                    };
                    let b = brute_force_base_size(&spec).map_err(err)?;
                    let f = base_size(&spec).map_err(err)?;
                    ensure(b == f, || format!("{spec}: exhaustive {b}, formula {f}"))?;
                }
            }
        }
    }
    Ok(())
}

fn construction_sweep() -> Check {
    for r in 2..=10u64 {
        for n in 2 * r..=120 {
            let spec = ActionSpec::symmetric(n, r).map_err(err)?;
            let f = construct_base(&spec).map_err(|e| format!("{spec}: {e}"))?;
            ensure(
                is_base(&f, &spec).map_err(err)?
                    && f.len() as u64 == base_size(&spec).map_err(err)?
                    && double_count_check(&f, r as usize).map_err(err)?,
                || format!("{spec}: construction rejected"),
            )?;
            let alt = ActionSpec::alternating(n + 1, r).map_err(err)?;
            let f = construct_base(&alt).map_err(|e| format!("{alt}: {e}"))?;
            let last = n as u32 + 1;
            ensure(
                is_base(&f, &alt).map_err(err)? && f.sets().iter().all(|s| !s.contains(&last)),
                || format!("{alt}: construction rejected"),
            )?;
        }
    }
    Ok(())
}

fn nearly_regular() -> Check {
    for l in 1..=10u32 {
        for k in 1..=l {
            let total = u64::try_from(binomial(l.into(), k.into())).map_err(err)?;
            for s in 0..=total {
                let h = nearly_regular_uniform(l, k, s).map_err(err)?;
                let deg = h.degrees();
                let max = *deg.iter().max().unwrap_or(&0) as u64;
                let min = *deg.iter().min().unwrap_or(&0) as u64;
                ensure(
                    max == (u64::from(k) * s).div_ceil(l.into()) && max - min <= 1,
                    || format!("({l},{k},{s}): degrees {deg:?}"),
                )?;
            }
        }
    }
    Ok(())
}

/// Families on 3 to 8 points: up to four distinct sets taken at fixed strides
/// through the subsets of size at most r.
fn enumeration() -> Check {
    let one = BigUint::from(1u32);
    for n in 3..=8u32 {
        let r = (n - 1) / 2;
        let pool: Vec<Vec<u32>> = (0u32..1 << n)
            .filter(|m| m.count_ones() <= r)
            .map(|m| (1..=n).filter(|x| m >> (x - 1) & 1 == 1).collect())
            .collect();
        for start in 0..12usize {
            let sets: Vec<Vec<u32>> = (0..4)
                .map(|i| pool[(start * 7 + i * 11) % pool.len()].clone())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let family = BaseFamily::new(n, sets).map_err(err)?;
            let counted = stabilizer_order_bruteforce(&family).map_err(err)?;
            let product = neighborhood_partition(&family).stabilizer_order();
            ensure(counted.order == product, || {
                format!("n = {n}: {} vs {product}", counted.order)
            })?;
            let sym = ActionSpec::new(Group::Symmetric, n.into(), r.into(), false).map_err(err)?;
            let alt =
                ActionSpec::new(Group::Alternating, n.into(), r.into(), false).map_err(err)?;
            ensure(
                is_base(&family, &sym).map_err(err)? == (counted.order == one)
                    && is_base(&family, &alt).map_err(err)? == (counted.even == one),
                || format!("criterion mismatch on {:?}", family.sets()),
            )?;
        }
    }
    Ok(())
}

fn injected_fault() -> Check {
    Err("injected fault".into())
}

pub fn run(args: &SelftestArgs) -> Outcome {
    let mut suites: Vec<Suite> = vec![
        ("worked-example", Box::new(worked_example)),
        ("equality-at-2r", Box::new(equality_at_two_r)),
        ("small-constructions", Box::new(small_constructions)),
        ("dual-sample", Box::new(|| duals(100))),
        ("closed-form-sample", Box::new(|| closed_forms(12, 1))),
    ];
    if let Level::Full = args.level {
        suites.push(("closed-form-sweep", Box::new(|| closed_forms(25, 3))));
        suites.push(("exhaustive-search", Box::new(exhaustive_agreement)));
        suites.push(("construction-sweep", Box::new(construction_sweep)));
        suites.push(("dual-corpus", Box::new(|| duals(1000))));
        suites.push(("nearly-regular", Box::new(nearly_regular)));
        suites.push(("stabilizer-enumeration", Box::new(enumeration)));
    }
    if args.inject_fault {
        suites.push(("injected-fault", Box::new(injected_fault)));
    }

    let mut failed = 0;
    let total = Instant::now();
    for (name, suite) in &suites {
        let start = Instant::now();
        let result = suite();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS  {name:<24} {secs:>8.3} s"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name:<24} {secs:>8.3} s  {e}");
            }
        }
    }
    println!(
        "{} passed, {failed} failed in {:.3} s",
        suites.len() - failed,
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        Err(Failure::Invalid(format!(
            "{failed} self-test suite(s) failed"
        )))
    } else {
        Ok(())
    }
}
