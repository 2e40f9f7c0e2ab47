//! The bundled verification suites: every acceptance criterion as a row of
//! a summary table. The quick profile halves cutoffs and dimension bounds.

use std::time::Instant;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;

use slicegap_core::arf::QuadraticSpace;
use slicegap_core::bredon::{bredon_cohomology, bredon_homology, cell_lemma_groups, slice_cell_model, sphere_model};
use slicegap_core::chain::AbGroup;
use slicegap_core::classes::{
    build_d, build_omega, differential_consistency, periodicity_requirements, skeleton_deduction,
    surviving_kervaire_dimensions, PeriodicityOutcome, RODegree,
};
use slicegap_core::cyclic::{kervaire_target, monomial_nonvanishing, ravenel_pattern_check};
use slicegap_core::equivariant::Cyclic;
use slicegap_core::fgl::{mu_cn_check, Fgl, FormalAModule, Height};
use slicegap_core::mackey::MackeyCoeff;
use slicegap_core::reps::RealRep;
use slicegap_core::ring::GfPrime;
use slicegap_core::simplicial::sphere_simplicial;
use slicegap_core::slices::{
    census_sphere_count_oracle, gap_check, norm_wedge, norm_wedge_brute, refinement_census, smash,
    smash_brute, SliceCell,
};

#[derive(Clone, Copy, ValueEnum)]
pub enum Profile {
    Quick,
    Full,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "full")]
    profile: Profile,
    /// Corrupt a differential before computing the named criterion (test
    /// hook; currently supports "cell-lemma")
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

struct Budget {
    cell_lemma_mmin: i64,
    oracle_dim: u32,
    mucn_cutoff: u32,
    height_cutoff_e3: u32,
    monomial_sum: u32,
    census_dmax: i64,
    gap_tmax: i64,
}

fn budget(profile: Profile) -> Budget {
    match profile {
        Profile::Full => Budget {
            cell_lemma_mmin: -4,
            oracle_dim: 6,
            mucn_cutoff: 10,
            height_cutoff_e3: 17,
            monomial_sum: 6,
            census_dmax: 24,
            gap_tmax: 16,
        },
        Profile::Quick => Budget {
            cell_lemma_mmin: -2,
            oracle_dim: 3,
            mucn_cutoff: 5,
            height_cutoff_e3: 17, // the height-4 certificate needs t^16
            monomial_sum: 3,
            census_dmax: 12,
            gap_tmax: 8,
        },
    }
}

fn reps_up_to(group: Cyclic, bound: u32) -> Vec<RealRep> {
    let slots = group.half().saturating_sub(1) as usize;
    let mut out = Vec::new();
    let mut c = vec![0u32; slots];
    fn rec(group: Cyclic, bound: u32, c: &mut Vec<u32>, pos: usize, out: &mut Vec<RealRep>) {
        if pos == c.len() {
            let lam: u32 = 2 * c.iter().sum::<u32>();
            if lam > bound {
                return;
            }
            for a in 0..=(bound - lam) {
                for b in 0..=(bound - lam - a) {
                    out.push(RealRep::new(group, a, b, c.clone()).unwrap());
                }
            }
            return;
        }
        for v in 0..=bound / 2 {
            c[pos] = v;
            rec(group, bound, c, pos + 1, out);
        }
        c[pos] = 0;
    }
    rec(group, bound, &mut c, 0, &mut out);
    out
}

fn cell_lemma_suite(b: &Budget, inject_fault: bool) -> bool {
    if inject_fault {
        // corrupt one differential of a Cell Lemma complex: appending a
        // spurious group-ring entry breaks dd = 0, which the coefficient
        // chain constructor must catch, failing the row
        let g = Cyclic::new(8).unwrap();
        let mut model = slice_cell_model(g, 4, -2, true, Some((-4, 0))).unwrap();
        if let Some((k, _)) = model.diffs.iter().next().map(|(k, _)| (*k, ())) {
            let labels = model.summands[&(k - 1)].len();
            let cols = model.summands[&k].len();
            if labels > 0 && cols > 0 {
                let mat = model.diffs.get_mut(&k).unwrap();
                mat.add_entry(0, 0, slicegap_core::eqchain::GrpRing::gamma_pow(8, 1));
            }
        }
        let coeff = MackeyCoeff::constant_z(g);
        return match std::panic::catch_unwind(move || model.mackey_chain(&coeff)) {
            Ok(Ok(chain)) => (-3..=-1).all(|j| chain.homology(j).is_zero()),
            _ => false,
        };
    }
    let mut pass = true;
    for order in [2u32, 4, 8] {
        let g = Cyclic::new(order).unwrap();
        for k in g.divisors().into_iter().filter(|k| *k > 1) {
            for m in b.cell_lemma_mmin..=-1 {
                match cell_lemma_groups(g, k, m) {
                    Ok(groups) => pass &= groups.values().all(|h| h.is_zero()),
                    Err(_) => pass = false,
                }
            }
        }
    }
    pass
}

fn oracle_equivalence(b: &Budget) -> bool {
    let mut pass = true;
    for order in [2u32, 4, 8] {
        let g = Cyclic::new(order).unwrap();
        for v in reps_up_to(g, b.oracle_dim) {
            let model = match sphere_model(&v) {
                Ok(m) => m,
                Err(_) => return false,
            };
            let oracle = match sphere_simplicial(&v, b.oracle_dim).and_then(|s| s.chain_complex()) {
                Ok(o) => o,
                Err(_) => return false,
            };
            for coeff in [MackeyCoeff::constant_z(g), MackeyCoeff::burnside(g)] {
                pass &= bredon_homology(&model, &coeff) == bredon_homology(&oracle, &coeff);
                pass &= bredon_cohomology(&model, &coeff) == bredon_cohomology(&oracle, &coeff);
            }
            let coeff = MackeyCoeff::constant_z(g);
            let bc = bredon_cohomology(&model, &coeff);
            let oc = model.orbit_complex().unwrap().transpose().homology_all();
            for k in 0..=(v.dim() as i64 + 1) {
                pass &= bc.get(&k).cloned().unwrap_or_else(AbGroup::zero)
                    == oc.get(&-k).cloned().unwrap_or_else(AbGroup::zero);
            }
        }
    }
    pass
}

fn mu_cn(b: &Budget) -> bool {
    (1..=3).all(|e| mu_cn_check(e, b.mucn_cutoff, 16).map(|r| r.all_pass()).unwrap_or(false))
}

fn heights(b: &Budget) -> bool {
    let mut pass = true;
    for p in [2u64, 3] {
        let fp = GfPrime::new(p).unwrap();
        pass &= Fgl::additive(fp, 10).height() == Ok(Height::Infinite);
    }
    pass &= Fgl::multiplicative(GfPrime::new(2).unwrap(), 1, 8).height() == Ok(Height::Finite(1));
    for (e, expect, cutoff) in [(1u32, 1u32, 4u32), (2, 2, 6), (3, 4, b.height_cutoff_e3)] {
        pass &= FormalAModule::new(e, cutoff)
            .and_then(|m| m.reduction_mod_pi())
            .and_then(|r| r.height())
            == Ok(Height::Finite(expect));
    }
    pass
}

fn detection(b: &Budget) -> bool {
    let mut pass = ravenel_pattern_check(3) && ravenel_pattern_check(5);
    for p in [3u64, 5] {
        let mut stack: Vec<Vec<u32>> = vec![vec![]];
        while let Some(e) = stack.pop() {
            let sum: u32 = e.iter().sum();
            let (nonzero, sym) = monomial_nonvanishing(p, &e);
            pass &= nonzero && sym.degree_consistent();
            if e.len() < 3 {
                for next in 0..=(b.monomial_sum - sum) {
                    let mut e2 = e.clone();
                    e2.push(next);
                    if e2.iter().sum::<u32>() <= b.monomial_sum {
                        stack.push(e2);
                    }
                }
            }
        }
    }
    let expect = AbGroup { betti: 0, torsion: vec![BigInt::from(8); 4] };
    for j in 4..=10 {
        let t = kervaire_target(j);
        pass &= t.nonzero && t.group == expect;
    }
    pass
}

fn degree_calculus() -> bool {
    let c8 = Cyclic::new(8).unwrap();
    let mut pass = build_d().degree == RODegree::rho(c8).scale(19);
    pass &= build_omega(4).degree.as_integer() == Some(256);
    for e in 1..=3 {
        for k in 1..=5 {
            pass &= differential_consistency(e, k).passes();
        }
    }
    pass &= periodicity_requirements(4, 2, 1).outcome == PeriodicityOutcome::MinimalK(4);
    for j in 1..=12u32 {
        pass &= skeleton_deduction(j) == (j >= 8);
    }
    pass &= surviving_kervaire_dimensions() == vec![2, 6, 14, 30, 62, 126];
    pass
}

fn arf_suite() -> bool {
    let standard_b = |g: usize| {
        let dim = 2 * g;
        let mut b = vec![vec![false; dim]; dim];
        for i in 0..g {
            b[2 * i][2 * i + 1] = true;
            b[2 * i + 1][2 * i] = true;
        }
        b
    };
    let mut pass = true;
    let mut level1 = Vec::new();
    for g in 1..=3usize {
        let dim = 2 * g;
        for bits in 0u64..(1 << dim) {
            let q: Vec<bool> = (0..dim).map(|i| bits >> i & 1 == 1).collect();
            let space = QuadraticSpace::new(q, standard_b(g)).unwrap();
            let arf = space.arf().unwrap();
            pass &= arf == space.witt_class().unwrap();
            pass &= space.gauss_sum_positive() == !arf;
            if g == 1 {
                level1.push(space);
            }
        }
    }
    for q1 in &level1 {
        for q2 in &level1 {
            let s = q1.direct_sum(q2);
            pass &= s.arf().unwrap() == (q1.arf().unwrap() ^ q2.arf().unwrap());
        }
    }
    pass && !QuadraticSpace::hyperbolic().arf().unwrap()
}

fn slice_algebra(b: &Budget) -> bool {
    let mut pass = true;
    for order in [2u32, 4, 8] {
        let g = Cyclic::new(order).unwrap();
        for h in g.divisors() {
            for k in g.divisors() {
                for a in -3i64..=3 {
                    for bb in -3i64..=3 {
                        let s1 = SliceCell::new(g, h, a, true).unwrap();
                        let s2 = SliceCell::new(g, k, bb, true).unwrap();
                        pass &= smash(&s1, &s2).ok() == smash_brute(&s1, &s2).ok();
                    }
                }
            }
        }
    }
    for (order, h) in [(4u32, 2u32), (8, 4), (8, 2)] {
        let g = Cyclic::new(order).unwrap();
        for size in 1..=6usize {
            let degrees: Vec<i64> = (0..size as i64).collect();
            pass &= norm_wedge(g, h, &degrees, 1 << 20).ok() == norm_wedge_brute(g, h, &degrees, 1 << 20).ok();
        }
    }
    for e in 1..=3u32 {
        let census = match refinement_census(e, b.census_dmax) {
            Ok(c) => c,
            Err(_) => return false,
        };
        let oracle = census_sphere_count_oracle(e, b.census_dmax);
        for d in 0..=(b.census_dmax / 2) as usize {
            let have = census.get(&(2 * d as i64)).map(|w| w.underlying_sphere_count()).unwrap_or(0);
            pass &= have == oracle[d];
        }
    }
    pass
}

fn gap(b: &Budget) -> bool {
    gap_check(3, 19, b.gap_tmax, (-3, -1)).map(|r| r.all_vanish).unwrap_or(false)
}

pub fn run(args: VerifyArgs) -> i32 {
    let fault = args.inject_fault.as_deref();
    let rows: Vec<(&str, Box<dyn FnOnce() -> bool>)> = vec![
        ("cell-lemma", {
            let inject = fault == Some("cell-lemma");
            let b2 = budget(args.profile);
            Box::new(move || cell_lemma_suite(&b2, inject))
        }),
        ("oracle-equivalence", {
            let b2 = budget(args.profile);
            Box::new(move || oracle_equivalence(&b2))
        }),
        ("mu-cn", {
            let b2 = budget(args.profile);
            Box::new(move || mu_cn(&b2))
        }),
        ("heights", {
            let b2 = budget(args.profile);
            Box::new(move || heights(&b2))
        }),
        ("detection", {
            let b2 = budget(args.profile);
            Box::new(move || detection(&b2))
        }),
        ("degree-calculus", Box::new(degree_calculus)),
        ("arf", Box::new(arf_suite)),
        ("slice-algebra", {
            let b2 = budget(args.profile);
            Box::new(move || slice_algebra(&b2))
        }),
        ("gap", {
            let b2 = budget(args.profile);
            Box::new(move || gap(&b2))
        }),
    ];
    let mut all = true;
    for (i, (name, run)) in rows.into_iter().enumerate() {
        let t = Instant::now();
        let pass = run();
        all &= pass;
        println!(
            "{:>2}  {:<20} {:<6} {:>8} ms",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_millis()
        );
    }
    if all {
        0
    } else {
        1
    }
}
