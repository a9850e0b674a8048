//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its headline numbers (run with `--nocapture` to see them).
//!
//! Every tolerance is pinned here: identities hold exactly, campaign
//! verdicts need at least 19 of 20 seeds, and the two timed suites must
//! finish inside their budgets.

use std::time::Instant;

use rayon::prelude::*;

use multigraded::baselocus::{probe_base_point, verify_f3, verify_f4};
use multigraded::cohomology::{
    default_box, h0_h1, h1_steps, h1_window, regions, stabilized_h1,
};
use multigraded::cotangent::{build_sections, verify_bg2};
use multigraded::degree::{DegreeBox, MultiIndex};
use multigraded::generators::{
    check_stabilization_coker, generator_table, verify_bb1, verify_p2p1,
};
use multigraded::report::Campaign;
use multigraded::scheme::{ComponentKind, LocalComponent, Point};
use multigraded::{PrimeField, Space, ZeroScheme};

fn field() -> PrimeField {
    PrimeField::default()
}

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex(v.to_vec())
}

fn campaign() -> Campaign {
    Campaign {
        base_seed: 0,
        seeds: 20,
        threshold: 19,
    }
}

/// The shared random corpus of criteria 1 and 2: mixed kinds, k <= 3,
/// n_i <= 2, deg <= 12, derived deterministically from the index.
fn corpus_scheme(seed: u64, f: &PrimeField) -> ZeroScheme {
    let mut s = seed / 13;
    let k = 1 + (s % 3) as usize;
    s /= 3;
    let dims: Vec<u32> = (0..k).map(|j| 1 + ((s >> j) & 1) as u32).collect();
    let deg = (seed % 13) as usize;
    let space = Space::new(dims).unwrap();
    ZeroScheme::random_mixed(&space, deg, seed, f)
}

/// Fiber-contained schemes for criterion 2: reduced points in one fiber,
/// with a tangent vector re-aimed along the fiber on every third instance.
fn fiber_scheme(seed: u64, f: &PrimeField) -> (ZeroScheme, usize) {
    let dims: Vec<u32> = match seed % 4 {
        0 => vec![1, 1],
        1 => vec![1, 2],
        2 => vec![2, 2],
        _ => vec![2, 1],
    };
    let space = Space::new(dims).unwrap();
    let i = (seed as usize / 4) % space.k();
    let base: Vec<u64> = (0..=space.dim(i)).map(|j| 1 + seed + j as u64).collect();
    let s = 2 + (seed % 3) as usize;
    let z = ZeroScheme::random_in_fiber(&space, i, &base, s, seed, f).unwrap();
    if seed % 3 != 0 {
        return (z, i);
    }
    // convert the first point into a tangent vector inside the fiber:
    // the chart direction must vanish on the slot-i coordinates
    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut v = Vec::new();
        for j in 0..space.k() {
            v.push(acc);
            acc += space.dim(j) as usize;
        }
        v
    };
    let mut dir = vec![0u64; space.total_dim() as usize];
    for (j, &off) in offsets.iter().enumerate() {
        if j != i {
            for slot in 0..space.dim(j) as usize {
                dir[off + slot] = 3 + seed + slot as u64;
            }
        }
    }
    let mut comps: Vec<LocalComponent> = z.components().to_vec();
    comps[0] = LocalComponent::tangent(comps[0].point.clone(), dir);
    (ZeroScheme::new(space, comps, f).unwrap(), i)
}

#[test]
fn criterion_01_euler_characteristic_identity() {
    let f = field();
    let t0 = Instant::now();
    let degrees: usize = (0..1000u64)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&seed| {
            let z = corpus_scheme(seed, &f);
            let window = h1_window(&z);
            let mut n = 0;
            for a in window.iter() {
                let (h0, h1) = h0_h1(&z, &a, &f);
                let expected = z.space().piece_dim(&a) as i64 - z.degree() as i64;
                assert_eq!(
                    h0 as i64 - h1 as i64,
                    expected,
                    "seed {seed} degree {a}"
                );
                n += 1;
            }
            n
        })
        .sum();
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "runtime target exceeded: {elapsed:?}"
    );
    println!(
        "criterion 01 (euler identity): PASS — 1000 schemes, {degrees} degrees, {elapsed:?}"
    );
}

#[test]
fn criterion_02_h1_monotonicity_fiber_equality_stabilization() {
    let f = field();

    // (1) non-increase along every +eps_i over the shared corpus
    let steps: usize = (0..1000u64)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&seed| {
            let z = corpus_scheme(seed, &f);
            let steps = h1_steps(&z, &h1_window(&z), &f);
            for s in &steps {
                assert!(
                    s.h1_next <= s.h1_at,
                    "monotonicity violated at seed {seed}, {:?}",
                    s
                );
            }
            steps.len()
        })
        .sum();

    // (2) equality along the fiber direction for fiber-contained schemes
    let fiber_steps: usize = (0..120u64)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&seed| {
            let (z, i) = fiber_scheme(seed, &f);
            let steps = h1_steps(&z, &h1_window(&z), &f);
            let mut n = 0;
            for s in steps.iter().filter(|s| s.i == i) {
                assert_eq!(
                    s.h1_at, s.h1_next,
                    "fiber equality violated at seed {seed}, {:?}",
                    s
                );
                n += 1;
            }
            n
        })
        .sum();

    // (3) positive stable limit exactly on deficient fiber traces
    let stab_checks: usize = (0..1000u64)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&seed| {
            let z = corpus_scheme(seed, &f);
            let k = z.space().k();
            let mut n = 0;
            for i in 0..k {
                let r = stabilized_h1(&z, &MultiIndex::zero(k), i, &f);
                assert_eq!(
                    r.limit > 0,
                    r.fiber_deficient,
                    "stabilization criterion mismatch at seed {seed} dir {i}"
                );
                n += 1;
            }
            n
        })
        .sum();
    let mut deficient_seen = 0;
    for seed in 0..40u64 {
        let (z, i) = fiber_scheme(seed, &f);
        let k = z.space().k();
        let r = stabilized_h1(&z, &MultiIndex::zero(k), i, &f);
        assert_eq!(r.limit > 0, r.fiber_deficient, "fiber seed {seed}");
        if r.fiber_deficient {
            deficient_seen += 1;
        }
    }
    assert!(deficient_seen > 0, "corpus never hit a deficient fiber");
    println!(
        "criterion 02 (h1 steps): PASS — {steps} monotone steps, {fiber_steps} fiber-equality steps, {} stabilization cross-checks ({deficient_seen} deficient)",
        stab_checks + 40
    );
}

#[test]
fn criterion_03_maximal_rank_of_general_points() {
    let f = field();
    let spaces = [
        vec![1u32, 1],
        vec![1, 1, 1],
        vec![1, 2],
        vec![2, 2],
    ];
    let mut configs = 0;
    for dims in &spaces {
        let space = Space::new(dims.clone()).unwrap();
        for z in 1..=15usize {
            let passed = campaign()
                .seed_list()
                .par_iter()
                .filter(|&&seed| {
                    let scheme = ZeroScheme::random_general(
                        &space,
                        z,
                        ComponentKind::Reduced,
                        seed,
                        &f,
                    );
                    regions(&scheme, &default_box(&scheme), &f).maximal_rank
                })
                .count();
            assert!(
                passed >= 19,
                "maximal rank failed on {dims:?} z={z}: {passed}/20"
            );
            configs += 1;
        }
    }
    println!("criterion 03 (maximal rank): PASS — {configs} configurations at >= 19/20 seeds");
}

#[test]
fn criterion_04_bb1_cokernel_formula() {
    let f = field();
    let t0 = Instant::now();
    let mut hypothesis_checked = 0;
    let mut logged = 0;
    for k in [2usize, 3] {
        let space = Space::new(vec![1; k]).unwrap();
        for z in 1..=12usize {
            let window = DegreeBox::cube(k, z as u32);
            let report = verify_bb1(&space, z, &window, &campaign(), &f).unwrap();
            assert!(
                report.pass,
                "k={k} z={z}: {}/{} seeds, failures {:?}",
                report.seeds_passed,
                report.seeds_total,
                report.failures()
            );
            for run in &report.runs {
                hypothesis_checked += run.checks.iter().filter(|c| c.hypothesis_ok).count();
                logged += run.checks.iter().filter(|c| !c.hypothesis_ok).count();
            }
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs() < 180, "runtime target exceeded: {elapsed:?}");
    println!(
        "criterion 04 (bb1 formula): PASS — {hypothesis_checked} formula checks, {logged} hypothesis-violating degrees logged, {elapsed:?}"
    );
}

#[test]
fn criterion_05_p2p1_cokernel_formula() {
    let f = field();
    let mut checked = 0;
    for dims in [vec![1u32, 2], vec![2, 2], vec![1, 1, 2]] {
        let space = Space::new(dims.clone()).unwrap();
        for z in 1..=10usize {
            let window = DegreeBox::cube(space.k(), z as u32);
            let report = verify_p2p1(&space, z, &window, &campaign(), &f).unwrap();
            assert!(
                report.pass,
                "space {dims:?} z={z}: failures {:?}",
                report.failures()
            );
            checked += report
                .runs
                .iter()
                .map(|r| r.checks.iter().filter(|c| c.hypothesis_ok).count())
                .sum::<usize>();
        }
    }
    println!("criterion 05 (p2p1 formula): PASS — {checked} formula checks across 3 spaces");
}

#[test]
fn criterion_06_cotangent_section_counts() {
    let f = field();
    // exact, deterministic dimension counts on the plane
    let p2 = Space::new(vec![2]).unwrap();
    for x in 2..=6u32 {
        let v = build_sections(&p2, 0, x, &mi(&[]), &f).unwrap();
        assert_eq!(v.dim(), (x * x - 1) as usize, "x = {x}");
    }
    // product campaigns: Y = P^1, R = O(a)
    let y = Space::new(vec![1]).unwrap();
    let mut campaigns = 0;
    for a in 0..=2u32 {
        for x in 2..=4u32 {
            let report = verify_bg2(&y, &mi(&[a]), x, &campaign(), &f).unwrap();
            assert!(
                report.pass,
                "a={a} x={x}: failures {:?}",
                report.failures()
            );
            campaigns += 1;
        }
    }
    println!(
        "criterion 06 (cotangent sections): PASS — plane dims x=2..6 exact, {campaigns} product campaigns at >= 19/20"
    );
}

#[test]
fn criterion_07_stabilization_cokernels() {
    let f = field();
    let spaces = [
        vec![1u32, 1],
        vec![2, 1],
        vec![1, 1, 1],
        vec![1, 2, 1],
        vec![2, 2, 1],
        vec![2, 1, 1],
    ];
    // a non-reduced component can make every fiber trace deficient at a
    // small outer twist; those instances carry the no-stabilization flag
    // and fall outside the statement's hypothesis, so they are skipped
    // (and counted) rather than checked
    let results: Vec<Option<u32>> = (0..400u64)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&seed| {
            let dims = &spaces[(seed % 6) as usize];
            let space = Space::new(dims.clone()).unwrap();
            let k = space.k();
            let deg = 1 + (seed % 8) as usize;
            let z = ZeroScheme::random_mixed(&space, deg, seed.wrapping_mul(31), &f);
            let fixed = MultiIndex(
                (0..k - 1)
                    .map(|j| ((seed >> (2 * j)) % 3) as u32)
                    .collect(),
            );
            match check_stabilization_coker(&z, &fixed, k - 1, &f) {
                Err(_) => None,
                Ok(check) => {
                    assert!(
                        check.pass,
                        "seed {seed} space {dims:?} fixed {fixed}: coker {} expected {}",
                        check.coker_at_e, check.expected
                    );
                    Some(check.e)
                }
            }
        })
        .collect();
    let flagged = results.iter().filter(|r| r.is_none()).count();
    let checked: Vec<u32> = results.into_iter().flatten().take(200).collect();
    assert!(
        checked.len() >= 200,
        "only {} admissible instances",
        checked.len()
    );
    let e0 = checked.iter().filter(|&&e| e == 0).count();
    assert!(e0 > 0, "no instance exercised the e = 0 branch");
    println!(
        "criterion 07 (stabilization cokernels): PASS — 200 instances exact ({e0} with e = 0), {flagged} no-stabilization instances flagged and skipped"
    );
}

#[test]
fn criterion_08_generator_table_structure() {
    let f = field();
    let configs: Vec<(usize, usize)> = (1..=12)
        .map(|z| (2usize, z))
        .chain([3, 8, 12].into_iter().map(|z| (3usize, z)))
        .collect();
    let mut total_checks = 0;
    let mut joint_coverage_degrees = 0;
    for &(k, z) in &configs {
        let space = Space::new(vec![1; k]).unwrap();
        let window = DegreeBox::cube(k, z as u32);
        let outcomes: Vec<(bool, usize)> = campaign()
            .seed_list()
            .par_iter()
            .map(|&seed| {
                let scheme =
                    ZeroScheme::random_general(&space, z, ComponentKind::Reduced, seed, &f);
                let table = regions(&scheme, &window, &f);
                let gens = generator_table(&scheme, &window, &f);
                let h1_of = |a: &MultiIndex| table.lookup(a).map(|r| r.h1);
                let mut ok = true;
                let mut joint = 0;
                for rec in &gens.records {
                    // surjectivity rule: a parent two steps down out of I1
                    // forces no new generators at this degree
                    let forced_zero = (0..k).any(|i| {
                        rec.a.get(i) >= 2
                            && rec
                                .a
                                .minus_eps(i)
                                .and_then(|p| p.minus_eps(i))
                                .and_then(|pp| h1_of(&pp))
                                == Some(0)
                    });
                    if forced_zero && rec.gens != 0 {
                        ok = false;
                    }
                    if rec.h0 > 0 {
                        match rec.min_parent_coker {
                            // generators at a degree never exceed the best
                            // single-parent cokernel; several parents can
                            // jointly cover strictly more than any one of
                            // them (counted as joint-coverage degrees)
                            Some(mc) => {
                                if rec.gens > mc {
                                    ok = false;
                                }
                                if rec.gens < mc {
                                    joint += 1;
                                }
                            }
                            // minimal degrees of I0 contribute their whole
                            // section space
                            None => {
                                if rec.gens != rec.h0 {
                                    ok = false;
                                }
                            }
                        }
                    } else if rec.gens != 0 {
                        ok = false;
                    }
                }
                // totals: h0 at the minimal degrees plus the per-degree
                // (deduplicated) generator counts at immediate descendants
                let minimal_sum: usize = table
                    .i0_min
                    .iter()
                    .map(|a| table.lookup(a).unwrap().h0)
                    .sum();
                let descendant_sum: usize = gens
                    .records
                    .iter()
                    .filter(|r| r.h0 > 0 && r.min_parent_coker.is_some())
                    .map(|r| r.gens)
                    .sum();
                (ok && gens.total() == minimal_sum + descendant_sum, joint)
            })
            .collect();
        let passed = outcomes.iter().filter(|(ok, _)| *ok).count();
        joint_coverage_degrees += outcomes.iter().map(|(_, j)| j).sum::<usize>();
        assert!(
            passed >= 19,
            "generator structure failed on k={k} z={z}: {passed}/20"
        );
        total_checks += 20;
    }
    println!(
        "criterion 08 (generator table structure): PASS — {} configs, {total_checks} seed runs, {joint_coverage_degrees} joint-coverage degrees observed",
        configs.len()
    );
}

#[test]
fn criterion_09_base_locus_campaigns() {
    let f = field();
    let p11 = Space::new(vec![1, 1]).unwrap();
    let p12 = Space::new(vec![1, 2]).unwrap();
    let mut instances = 0;

    // scheme-theoretic base locus at the given degree
    let f3_grid: &[(&Space, &[u32], &[usize])] = &[
        (&p11, &[1, 1], &[1]),
        (&p11, &[2, 2], &[1, 4, 6]),
        (&p12, &[1, 1], &[1, 2]),
        (&p12, &[2, 2], &[1, 7, 14]),
    ];
    for &(space, a, ss) in f3_grid {
        for &s in ss {
            let c = verify_f3(space, s, &mi(a), 1000, &campaign(), &f).unwrap();
            assert!(
                c.pass,
                "f3 {:?} a={a:?} s={s}: {}/{}",
                space.0, c.seeds_passed, c.seeds_total
            );
            instances += 1;
        }
    }

    // one multidegree step up
    let f4_grid: &[(&Space, &[u32], usize, &[usize])] = &[
        (&p11, &[1, 1], 0, &[1, 3]),
        (&p11, &[1, 1], 1, &[3]),
        (&p12, &[1, 1], 0, &[1, 5]),
        (&p12, &[1, 1], 1, &[5]),
    ];
    for &(space, a, i, ss) in f4_grid {
        for &s in ss {
            let c = verify_f4(space, s, &mi(a), i, 1000, &campaign(), &f).unwrap();
            assert!(
                c.pass,
                "f4 {:?} a={a:?} i={i} s={s}: {}/{}",
                space.0, c.seeds_passed, c.seeds_total
            );
            for (_, r) in &c.reports {
                assert!(r.h0_exceeds_dim);
            }
            instances += 1;
        }
    }

    // the fiber exclusion: with a zero slot in the twist, a probe sharing
    // the projection of the support IS a base point
    let pt = Point {
        coords: vec![vec![2, 1], vec![3, 1]],
    };
    let z = ZeroScheme::new(p11.clone(), vec![LocalComponent::reduced(pt)], &f).unwrap();
    let mate = Point {
        coords: vec![vec![7, 1], vec![3, 1]],
    };
    assert!(probe_base_point(&z, &mi(&[0, 1]), &mate, &f).unwrap());
    let off_fiber = Point {
        coords: vec![vec![7, 1], vec![4, 1]],
    };
    assert!(!probe_base_point(&z, &mi(&[0, 1]), &off_fiber, &f).unwrap());

    println!(
        "criterion 09 (base locus): PASS — {instances} (s, a) campaigns at >= 19/20, fiber exclusion reproduced"
    );
}

#[test]
fn criterion_10_byte_identical_reports() {
    let bin = env!("CARGO_BIN_EXE_multigraded");
    let run = |args: &[&str]| {
        let out = std::process::Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs");
        (out.stdout, out.status.code())
    };
    let verify_args = [
        "--seeds", "4", "--threshold", "4", "verify", "bb1", "--k", "2", "--z", "4",
    ];
    let (a, code_a) = run(&verify_args);
    let (b, code_b) = run(&verify_args);
    assert_eq!(code_a, Some(0));
    assert_eq!(code_a, code_b);
    assert_eq!(a, b, "verify reports differ between runs");

    let regions_args = [
        "--seed", "11", "regions", "--space", "1,2", "--points", "5", "--kind", "mixed",
    ];
    let (c, code_c) = run(&regions_args);
    let (d, code_d) = run(&regions_args);
    assert_eq!(code_c, Some(0));
    assert_eq!(code_c, code_d);
    assert_eq!(c, d, "regions reports differ between runs");
    println!("criterion 10 (determinism): PASS — byte-identical verify and regions reports");
}
