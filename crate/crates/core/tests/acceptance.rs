//! One PASS/FAIL line per acceptance criterion, each with a wall-clock limit.
//! Exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use ekr_core::characters::{mn_character, two_layer_minus_two_classification};
use ekr_core::cliques::{clique_for, verify_clique_character_nonvanishing};
use ekr_core::ekrverify::{
    build_standard_basis, enumerate_max_independent_sets, reconstruct_from_blocks, transfer_strict_ekr_check,
    verify_m_fullrank, verify_x_bound,
};
use ekr_core::partitions::factorial;
use ekr_core::scheme::{clique_coclique_check, graph_spectrum, ratio_bound_is_tight, spectrum_charpoly_crosscheck};
use ekr_core::{CharacterTable, CycleType, GroupKind, GroupTable, Partition, Permutation, Shape};
use num_bigint::{BigInt, BigUint};
use num_traits::One;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, Box<dyn Fn() -> Outcome>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

/// Standard Young tableaux counted by removing outer corners.
fn syt_count(shape: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    if shape.iter().sum::<usize>() <= 1 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(shape) {
        return v.clone();
    }
    let mut total = BigUint::default();
    for r in 0..shape.len() {
        if r + 1 == shape.len() || shape[r + 1] < shape[r] {
            let mut smaller = shape.to_vec();
            smaller[r] -= 1;
            while smaller.last() == Some(&0) {
                smaller.pop();
            }
            total += syt_count(&smaller, memo);
        }
    }
    memo.insert(shape.to_vec(), total.clone());
    total
}

fn criterion_1() -> Outcome {
    let (report, sets) = ok(enumerate_max_independent_sets(5, false))?;
    ensure(report.complete, || "search incomplete".into())?;
    ensure(report.max_size == 12, || format!("max size {}", report.max_size))?;
    ensure(report.count == 25, || format!("{} maximum sets", report.count))?;
    ensure(report.all_cosets, || "a maximum set is not a coset".into())?;
    ensure(sets.iter().all(|s| s.len() == 12), || "set sizes".into())?;
    Ok(format!(
        "{} maximum sets of size {}, all S_(i,j)",
        report.count, report.max_size
    ))
}

fn criterion_2(cache: &std::path::Path) -> Outcome {
    let mut parts = Vec::new();
    for n in 5..=8 {
        if n == 8 {
            // Warm the cache; the timed run below reads it.
            ok(clique_for(8, Some(cache)))?;
        }
        let start = Instant::now();
        let clique = ok(clique_for(n, Some(cache)))?;
        let table = ok(GroupTable::new(n, GroupKind::Alt))?;
        let coclique = table.coset_family(1, 1).members;
        let r = ok(clique_coclique_check(&clique.members, &coclique, n))?;
        let elapsed = start.elapsed();
        let half_factorial = factorial_usize(n) / 2;
        ensure(r.passed() && r.equality, || format!("n = {n}: no equality"))?;
        ensure(clique.len() * coclique.len() == half_factorial, || {
            format!("n = {n}: |C||S| ≠ n!/2")
        })?;
        ensure(elapsed < Duration::from_secs(10), || {
            format!("n = {n} took {elapsed:?}")
        })?;
        parts.push(format!("{}·{}={}", clique.len(), coclique.len(), half_factorial));
    }
    Ok(parts.join(", "))
}

fn criterion_3(cache: &std::path::Path) -> Outcome {
    let mut checked = 0;
    for n in 5..=9 {
        let clique = ok(clique_for(n, Some(cache)))?;
        let r = ok(verify_clique_character_nonvanishing(&clique))?;
        ensure(r.vanishing.is_empty(), || {
            format!("n = {n}: vanishing {:?}", r.vanishing)
        })?;
        ensure(r.standard_sum.is_zero(), || {
            format!("n = {n}: standard sum {}", r.standard_sum)
        })?;
        ensure(
            r.sums.iter().all(|s| s.character.is_standard() || !s.sum.is_zero()),
            || format!("n = {n}: zero sum"),
        )?;
        checked += r.sums.len();
    }
    Ok(format!("{checked} character sums over n = 5..9"))
}

fn criterion_4() -> Outcome {
    let mut memo = HashMap::new();
    let mut partitions = 0;
    for n in 1..=10 {
        let identity = CycleType::new(vec![1; n]).map_err(|e| e.to_string())?;
        let mut sum_sq = BigUint::default();
        for p in Partition::all(n) {
            let chi = ok(mn_character(&p, &identity))?;
            let syt = syt_count(p.parts(), &mut memo);
            ensure(chi == BigInt::from(syt.clone()), || {
                format!("χ^{p}(1) = {chi}, SYT count {syt}")
            })?;
            sum_sq += &syt * &syt;
            partitions += 1;
        }
        ensure(sum_sq == factorial(n), || format!("Σ dim² ≠ {n}!"))?;
    }
    for n in 3..=8 {
        let table = ok(CharacterTable::new(n))?;
        ok(table.check_orthogonality())?;
    }
    Ok(format!("{partitions} partitions; Alt(3..8) orthogonal"))
}

fn criterion_5() -> Outcome {
    let allowed: BTreeSet<i64> = [-2, -1, 0, 1, 2].into();
    let mut cases = 0;
    for n in [8, 10, 12] {
        let r = ok(two_layer_minus_two_classification(n))?;
        ensure(r.passed(), || format!("n = {n}: {:?}", r.violations))?;
        ensure(r.value_counts.iter().all(|(v, _)| allowed.contains(v)), || {
            format!("n = {n}: values")
        })?;
        for case in &r.minus_two {
            let shape_ok = case.shape == Shape::TwoLayerHook || (case.symmetric && case.shape == Shape::NearHook);
            ensure(shape_ok && case.exceeds_2n_minus_2, || {
                format!("n = {n}: {}", case.partition)
            })?;
        }
        cases += r.minus_two.len();
    }
    Ok(format!("{cases} partitions with value −2, all classified"))
}

fn criterion_6() -> Outcome {
    for n in 5..=7 {
        let r = ok(ok(build_standard_basis(n))?.verify())?;
        let expected = factorial_usize(n - 2) / 2;
        ensure(r.least_eigenvalue == expected.to_string(), || {
            format!("n = {n}: τ = {}", r.least_eigenvalue)
        })?;
        ensure(r.rank_h == (n - 1) * (n - 1), || format!("n = {n}: rank {}", r.rank_h))?;
    }
    Ok("HᵀH identity and τ = (n−2)!/2 for n = 5, 6, 7".into())
}

fn criterion_7() -> Outcome {
    for n in 5..=7 {
        let m = ok(verify_m_fullrank(n))?;
        ensure(m.rank == (n - 1) * (n - 2), || format!("n = {n}: rank {}", m.rank))?;
        ensure(m.gram == if n % 2 == 1 { "T" } else { "U" }, || "gram".into())?;
    }
    for n in 5..=8 {
        let x = ok(verify_x_bound(n))?;
        ensure(x.edge_multiplicity == factorial_usize(n - 4), || {
            format!("n = {n}: multiplicity")
        })?;
        ensure(x.bound == format!("-{}", n - 3), || {
            format!("n = {n}: bound {}", x.bound)
        })?;
        if n <= 7 {
            let tau = x
                .exact_least_eigenvalue
                .ok_or_else(|| format!("n = {n}: exact τ missing"))?;
            ensure(tau >= -(n as i64 - 3), || format!("n = {n}: τ = {tau}"))?;
        }
    }
    Ok("rank M direct and via T/U; X cover and τ(X) ≥ −(n−3)".into())
}

fn criterion_8() -> Outcome {
    let (_, sets) = ok(enumerate_max_independent_sets(5, false))?;
    let table5 = ok(GroupTable::new(5, GroupKind::Alt))?;
    for s in &sets {
        let r = ok(reconstruct_from_blocks(s))?;
        let mut expected = table5.coset_family(r.coset.0, r.coset.1).members;
        let mut got = s.clone();
        expected.sort_by_key(Permutation::lex_rank);
        got.sort_by_key(Permutation::lex_rank);
        ensure(expected == got, || {
            format!("label {:?} does not match the set", r.coset)
        })?;
    }
    let table6 = ok(GroupTable::new(6, GroupKind::Alt))?;
    let g = ok(Permutation::parse_cycles(6, "(1 2 3)"))?;
    let h = ok(Permutation::parse_cycles(6, "(1 4)(2 6 3 5)"))?;
    let g_inv = g.inverse();
    let mut translated = 0;
    for i in 1..=6 {
        for j in 1..=6 {
            // h·S_{i,j}·g = S_{g⁻¹(i), h(j)}
            let set: Vec<Permutation> = table6
                .coset_family(i, j)
                .members
                .iter()
                .map(|p| h.compose(p).compose(&g))
                .collect();
            let r = ok(reconstruct_from_blocks(&set))?;
            let expected = (g_inv.apply(i), h.apply(j));
            ensure(r.coset == expected, || {
                format!("S_({i},{j}) translated: got {:?}, expected {expected:?}", r.coset)
            })?;
            translated += 1;
        }
    }
    Ok(format!(
        "{} enumerated sets at n = 5, {translated} translated cosets at n = 6",
        sets.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut triples = 0;
    for n in [5, 6] {
        let r = ok(transfer_strict_ekr_check(n))?;
        ensure(r.expected_count * n * (n - 1) == r.h_order, || "count".into())?;
        ensure(r.union_bound.0 < r.union_bound.1, || "union bound".into())?;
        triples += r.triples;
        if n == 5 {
            let sym = r.sym5.ok_or("Sym(5) enumeration missing")?;
            ensure(sym.passed() && sym.count == 25 && sym.max_size == 24, || {
                format!("Sym(5): {sym:?}")
            })?;
        }
    }
    Ok(format!(
        "{triples} (α, π, β) triples; Sym(5) has 25 maximum families, all cosets"
    ))
}

fn criterion_10() -> Outcome {
    for n in [5, 6] {
        ok(spectrum_charpoly_crosscheck(n))?;
    }
    let s = ok(graph_spectrum(5))?;
    ensure(*s.least() == BigInt::from(-6), || format!("τ = {}", s.least()))?;
    ensure(ratio_bound_is_tight(&s), || format!("ratio bound {}", s.ratio_bound()))?;
    Ok(format!("spectrum {s}; ratio bound {} tight", s.ratio_bound()))
}

fn main() {
    let cache = tempfile::tempdir().expect("temporary cache directory");
    let path = cache.path().to_path_buf();
    let criteria: Vec<Criterion> = vec![
        (
            "1 EKR bound and equality by enumeration (n=5)",
            60,
            Box::new(criterion_1),
        ),
        (
            "2 clique-coclique equality (n=5..8)",
            40,
            Box::new({
                let p = path.clone();
                move || criterion_2(&p)
            }),
        ),
        (
            "3 nonvanishing clique character sums (n=5..9)",
            300,
            Box::new({
                let p = path.clone();
                move || criterion_3(&p)
            }),
        ),
        ("4 character engine", 120, Box::new(criterion_4)),
        ("5 two-layer hook classification (n=8,10,12)", 60, Box::new(criterion_5)),
        ("6 standard-module basis (n=5..7)", 30, Box::new(criterion_6)),
        ("7 rank of M and the pair-graph bound", 300, Box::new(criterion_7)),
        ("8 reconstruction from the block system", 120, Box::new(criterion_8)),
        ("9 transfer counting identity and Sym(5)", 300, Box::new(criterion_9)),
        ("10 spectral cross-check (n=5,6)", 120, Box::new(criterion_10)),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let within = secs <= limit as f64;
        match (&outcome, within) {
            (Ok(detail), true) => println!("PASS  {name}  [{secs:.2}s ≤ {limit}s]  {detail}"),
            (Ok(detail), false) => {
                failures += 1;
                println!("FAIL  {name}  [{secs:.2}s > {limit}s]  {detail}");
            }
            (Err(why), _) => {
                failures += 1;
                println!("FAIL  {name}  [{secs:.2}s]  {why}");
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
