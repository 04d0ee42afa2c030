//! Acceptance suite. Runs without the libtest harness and prints one
//! `PASS`/`FAIL` line per criterion; exits non-zero if any fails.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use gapcover::provenance::sha256_hex;
use gapcover_core::gadget::{build_gadget, verify_g3, verify_g4, verify_m2, GadgetOptions};
use gapcover_core::hypercube::{apply_reduction, reduced_universe_size, HypercubeView};
use gapcover_core::oracles::{
    brute_clique, brute_ksum, brute_sat, brute_vectorsum, exact_opt, exact_opt_model,
    greedy_cover, ExactResult,
};
use gapcover_core::reductions::clique::clique_cover_ids;
use gapcover_core::reductions::sat::sat_cover_ids;
use gapcover_core::reductions::vectorsum::vectorsum_cover_ids;
use gapcover_core::reductions::{
    clique_to_setcover, ksum_to_vectorsum, pipeline_sat, sat_to_setcover, vectorsum_to_setcover,
    DigitParams, PipelineOptions,
};
use gapcover_core::universal::{build_universal, verify_universal};
use gapcover_core::{Budget, CnfFormula, MultipartiteGraph, SetCoverInstance, VectorSumInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn budget() -> Budget {
    Budget::default()
}

/// `Some(size)` when opt ≤ bound, `None` when it exceeds the bound or no
/// cover exists.
fn opt_at_most(inst: &SetCoverInstance, bound: usize) -> Result<Option<(usize, Vec<usize>)>, String> {
    match exact_opt(inst, bound, &budget()).map_err(|e| e.to_string())? {
        ExactResult::Found { size, witness } => Ok(Some((size, witness))),
        ExactResult::ExceedsBound | ExactResult::Infeasible { .. } => Ok(None),
    }
}

fn ids_to_indices(inst: &SetCoverInstance, ids: &[String]) -> Result<Vec<usize>, String> {
    ids.iter()
        .map(|id| inst.set_index(id).ok_or_else(|| format!("no set {id}")))
        .collect()
}

fn gadget_properties() -> Outcome {
    for (k, h, n) in [(1, 2, 8), (2, 2, 8), (2, 2, 16), (1, 4, 16), (3, 2, 8)] {
        let built = build_gadget(k, n, h, &GadgetOptions::default()).map_err(|e| e.to_string())?;
        let g = &built.gadget;
        ensure!(g.h == h && g.ell == h.pow(k as u32), "({k},{h},{n}) built with h = {}", g.h);
        let m2 = verify_m2(&g.matrix, g.h, &budget()).map_err(|e| e.to_string())?;
        ensure!(m2.holds(), "({k},{h},{n}) M2: {m2:?}");
        let g3 = verify_g3(g, &budget()).map_err(|e| e.to_string())?;
        ensure!(g3.holds(), "({k},{h},{n}) G3: {g3:?}");
        let g4 = verify_g4(g, &budget()).map_err(|e| e.to_string())?;
        ensure!(g4.holds(), "({k},{h},{n}) G4: {g4:?}");
    }
    Ok("5 gadgets pass M2, G3 and G4 exhaustively".into())
}

fn random_partitioned(rng: &mut ChaCha8Rng, k: usize, n: usize, u: usize, density: f64) -> SetCoverInstance {
    let sets = k * n;
    let set_ids = (0..sets).map(|s| format!("s{}_{}", s / n, s % n)).collect();
    let universe_ids = (0..u).map(|e| format!("e{e}")).collect();
    let incidence = (0..sets)
        .map(|_| (0..u).filter(|_| rng.random_bool(density)).collect())
        .collect();
    SetCoverInstance::new(set_ids, universe_ids, incidence).with_part_sizes(&vec![n; k])
}

/// Makes one set per part jointly cover the universe.
fn plant_rainbow(rng: &mut ChaCha8Rng, inst: &mut SetCoverInstance, n: usize) -> Vec<usize> {
    let k = inst.num_sets() / n;
    let picks: Vec<usize> = (0..k).map(|p| p * n + rng.random_range(0..n)).collect();
    for e in 0..inst.universe_size() {
        let s = picks[rng.random_range(0..k)];
        if !inst.incidence[s].contains(&e) {
            inst.incidence[s].push(e);
            inst.incidence[s].sort_unstable();
        }
    }
    picks
}

fn hypercube_two_sided() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let gadgets: Vec<_> = (1..=4)
        .map(|n| build_gadget(2, n, 2, &GadgetOptions::default()).map(|b| b.gadget))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let (mut planted, mut no, mut other) = (0, 0, 0);
    for trial in 0..400 {
        let n = rng.random_range(1..=4);
        let u = rng.random_range(1..=3);
        let g = &gadgets[n - 1];
        ensure!(g.ell == 4 && g.h == 2 && g.m == n, "gadget for n = {n} has m = {}", g.m);
        let mut src = random_partitioned(&mut rng, 2, n, u, 0.3);
        let plant = trial % 2 == 0;
        if plant {
            let picks = plant_rainbow(&mut rng, &mut src, n);
            ensure!(src.covers(&picks) && src.is_rainbow(&picks), "planting failed");
        }
        let reduced = apply_reduction(&src, g, 1_000_000, false).map_err(|e| e.to_string())?.instance;
        let view = HypercubeView::new(&src, g).map_err(|e| e.to_string())?;
        let explicit = opt_at_most(&reduced, 2)?;
        let implicit = match exact_opt_model(&view, 2, &budget()).map_err(|e| e.to_string())? {
            ExactResult::Found { size, .. } => Some(size),
            _ => None,
        };
        ensure!(explicit.as_ref().map(|x| x.0) == implicit, "explicit and implicit opt differ on {src:?}");
        if plant {
            planted += 1;
            ensure!(explicit.is_some(), "planted rainbow cover lost: {src:?}");
        } else if opt_at_most(&src, 2)?.is_none() {
            no += 1;
            ensure!(explicit.is_none(), "opt(src) > 2 but opt(I') ≤ 2: {src:?}");
        } else {
            other += 1;
        }
    }
    ensure!(no >= 20, "only {no} instances with opt(src) > 2");
    Ok(format!("{planted} planted yes-instances, {no} with opt(src) > 2, {other} others"))
}

fn universe_sizes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut runs = 0;
    for _ in 0..60 {
        let k = rng.random_range(1..=2);
        let n = rng.random_range(1..=3);
        let h = [2, 4][rng.random_range(0..2)];
        let u = rng.random_range(0..=3);
        let g = build_gadget(k, n, h, &GadgetOptions::default()).map_err(|e| e.to_string())?.gadget;
        let src = random_partitioned(&mut rng, k, n, u, 0.5);
        let Some(expected) = reduced_universe_size(g.m, u, g.ell) else {
            return Err("size overflow".into());
        };
        if expected > 2_000_000 {
            continue;
        }
        let red = apply_reduction(&src, &g, 2_000_000, false).map_err(|e| e.to_string())?;
        ensure!(
            red.instance.universe_size() as u128 == expected,
            "|U'| = {} but m·|U|^ℓ = {expected}",
            red.instance.universe_size()
        );
        runs += 1;
    }
    let phis = [
        CnfFormula::new(2, vec![vec![1, 2], vec![-1]]),
        CnfFormula::new(3, vec![vec![1, -2], vec![2, 3], vec![-3]]),
        CnfFormula::new(1, vec![vec![1], vec![-1]]),
    ];
    for phi in phis {
        let phi = phi.map_err(|e| e.to_string())?;
        for k in 1..=2 {
            let p = pipeline_sat(&phi, k, &PipelineOptions::default()).map_err(|e| e.to_string())?;
            for out in &p.outputs {
                let Some(red) = &out.reduced else { continue };
                ensure!(
                    Some(red.universe_size() as u128) == p.params.reduced_universe
                        && p.params.reduced_universe
                            == reduced_universe_size(p.params.m, out.source.universe_size(), p.params.ell),
                    "pipeline universe mismatch"
                );
                runs += 1;
            }
        }
    }
    ensure!(runs >= 50, "only {runs} runs");
    Ok(format!("{runs} reductions with |U'| = m·|U|^ℓ exactly"))
}

fn sat_front_end() -> Outcome {
    let literals = [1i64, -1, 2, -2];
    let clauses: Vec<Vec<i64>> = (1u32..16)
        .map(|mask| literals.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l).collect())
        .collect();
    let mut formulas = vec![Vec::new()];
    for len in 1..=3 {
        let mut idx = vec![0usize; len];
        loop {
            formulas.push(idx.iter().map(|&i| clauses[i].clone()).collect::<Vec<_>>());
            let Some(p) = (0..len).rev().find(|&p| idx[p] + 1 < clauses.len()) else { break };
            idx[p] += 1;
            idx[p + 1..].fill(0);
        }
    }
    let mut checked = 0;
    for cl in &formulas {
        let phi = CnfFormula::new(2, cl.clone()).map_err(|e| e.to_string())?;
        let sat = brute_sat(&phi, &budget()).map_err(|e| e.to_string())?;
        for k in 1..=2 {
            let inst = sat_to_setcover(&phi, k, 1_000_000).map_err(|e| e.to_string())?;
            let cover = opt_at_most(&inst, k)?;
            ensure!(sat.is_some() == cover.is_some(), "{cl:?} k = {k}: sat {} cover {:?}", sat.is_some(), cover);
            if let Some((_, w)) = &cover {
                ensure!(inst.is_rainbow(w), "{cl:?} k = {k}: witness not rainbow");
            }
            if let Some(a) = &sat {
                let planted = ids_to_indices(&inst, &sat_cover_ids(&phi, k, a))?;
                ensure!(inst.covers(&planted) && inst.is_rainbow(&planted), "{cl:?}: assignment cover fails");
            }
            checked += 1;
        }
    }
    Ok(format!("{} formulas × k ∈ {{1, 2}}: {checked} agreements", formulas.len()))
}

fn random_multipartite(rng: &mut ChaCha8Rng, parts_k: usize, max_n: usize) -> Result<MultipartiteGraph, String> {
    let n = rng.random_range(parts_k..=max_n);
    let mut parts: Vec<Vec<usize>> = (0..parts_k).map(|p| vec![p]).collect();
    for v in parts_k..n {
        parts[rng.random_range(0..parts_k)].push(v);
    }
    let mut owner = vec![0; n];
    for (p, vs) in parts.iter().enumerate() {
        for &v in vs {
            owner[v] = p;
        }
    }
    let density = rng.random_range(0.2..0.8);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if owner[a] != owner[b] && rng.random_bool(density) {
                edges.push((a, b));
            }
        }
    }
    MultipartiteGraph::new(n, parts, edges).map_err(|e| e.to_string())
}

fn clique_front_end() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut yes = 0;
    for _ in 0..200 {
        let g = random_multipartite(&mut rng, 3, 8)?;
        let clique = brute_clique(&g, 3, &budget()).map_err(|e| e.to_string())?;
        let inst = clique_to_setcover(&g, 3).map_err(|e| e.to_string())?;
        let cover = opt_at_most(&inst, 3)?;
        ensure!(clique.is_some() == cover.is_some(), "disagreement on {g:?}");
        if let Some(mut vs) = clique {
            yes += 1;
            let owner = g.part_map();
            vs.sort_by_key(|&v| owner[v]);
            let idx = ids_to_indices(&inst, &clique_cover_ids(&vs))?;
            ensure!(inst.covers(&idx) && inst.is_rainbow(&idx), "clique cover fails on {g:?}");
        }
    }
    Ok(format!("200 graphs agree ({yes} with a triangle)"))
}

/// Multisets of size 1..=max over `items`, as sorted index lists.
fn multisets(items: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..items).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        if s.len() < max {
            for j in *s.last().unwrap()..items {
                let mut t = s.clone();
                t.push(j);
                stack.push(t);
            }
        }
        out.push(s);
    }
    out.sort();
    out
}

fn vectorsum_front_end() -> Outcome {
    let mut checked = 0;
    let mut yes = 0;
    for dim in 1..=2 {
        let vectors: Vec<Vec<i64>> = (0..3usize.pow(dim as u32))
            .map(|mut c| (0..dim).map(|_| { let d = (c % 3) as i64 - 1; c /= 3; d }).collect())
            .collect();
        let lists = multisets(vectors.len(), 3);
        for a in &lists {
            for b in &lists {
                let pick = |l: &Vec<usize>| l.iter().map(|&i| vectors[i].clone()).collect::<Vec<_>>();
                let vs = VectorSumInstance { k: 2, dim, bound: 1, lists: vec![pick(a), pick(b)] };
                let found = brute_vectorsum(&vs, &budget()).map_err(|e| e.to_string())?;
                let inst = vectorsum_to_setcover(&vs, 1_000_000).map_err(|e| e.to_string())?;
                let cover = opt_at_most(&inst, 2)?;
                ensure!(found.is_some() == cover.is_some(), "disagreement on {vs:?}");
                if let Some(picks) = found {
                    yes += 1;
                    let idx = ids_to_indices(&inst, &vectorsum_cover_ids(&picks))?;
                    ensure!(inst.covers(&idx) && inst.is_rainbow(&idx), "planted cover fails on {vs:?}");
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} instances (lists as multisets) agree, {yes} yes"))
}

fn ksum_biconditional() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = 2;
    let mut yes = 0;
    for trial in 0..100 {
        let mut lists: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..rng.random_range(1..=3)).map(|_| rng.random_range(-8..=8)).collect())
            .collect();
        if trial % 3 == 0 {
            let x = lists[0][0];
            lists[1].push(-x);
        }
        let p = rng.random_range(3..=5u64);
        let base = DigitParams::choose(k, 8, Some(p), None).map_err(|e| e.to_string())?;
        let d = base.d + rng.random_range(0..=1);
        let params = DigitParams::choose(k, 8, Some(p), Some(d)).map_err(|e| e.to_string())?;
        let family = ksum_to_vectorsum(&lists, &params, 1_000_000).map_err(|e| e.to_string())?;
        let s = (k as u128 + 1).pow(d as u32 - 1);
        ensure!(family.len() as u128 == s, "p = {p}, d = {d}: {} outputs, expected {s}", family.len());
        let left = brute_ksum(&lists, &budget()).map_err(|e| e.to_string())?.is_some();
        let mut right = false;
        for vs in &family {
            if brute_vectorsum(vs, &budget()).map_err(|e| e.to_string())?.is_some() {
                right = true;
                break;
            }
        }
        ensure!(left == right, "{lists:?} p = {p} d = {d}: k-SUM {left}, vector sum {right}");
        yes += left as usize;
    }
    Ok(format!("100 instances agree ({yes} yes), output counts are (k+1)^(d-1)"))
}

fn greedy_ratio() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let sets = rng.random_range(1..=12);
        let u = rng.random_range(1..=10);
        let density = rng.random_range(0.1..0.6);
        let mut incidence: Vec<Vec<usize>> = (0..sets)
            .map(|_| (0..u).filter(|_| rng.random_bool(density)).collect())
            .collect();
        for e in 0..u {
            if !incidence.iter().any(|s| s.contains(&e)) {
                let s = rng.random_range(0..sets);
                incidence[s].push(e);
                incidence[s].sort_unstable();
            }
        }
        let inst = SetCoverInstance::new(
            (0..sets).map(|s| format!("s{s}")).collect(),
            (0..u).map(|e| format!("e{e}")).collect(),
            incidence,
        );
        let greedy = greedy_cover(&inst).map_err(|e| e.to_string())?;
        ensure!(inst.covers(&greedy.cover), "greedy output is not a cover");
        let Some((opt, _)) = opt_at_most(&inst, sets)? else {
            return Err("feasible instance reported infeasible".into());
        };
        let ratio = greedy.size as f64 / opt as f64;
        ensure!(ratio - 1e-9 <= 1.0 + (u as f64).ln(), "greedy {} vs opt {opt} on |U| = {u}", greedy.size);
        worst = worst.max(ratio / (1.0 + (u as f64).ln()));
    }
    Ok(format!("1000 instances, worst greedy/(opt·(1+ln|U|)) = {worst:.3}"))
}

fn universal_sets() -> Outcome {
    let mut checked = 0;
    for n in (1..=16).chain([20, 24, 32, 40, 48, 56, 64]) {
        for k in 1..=3usize.min(n) {
            let us = build_universal(n, k, 0, &budget()).map_err(|e| e.to_string())?;
            let v = verify_universal(&us, &budget()).map_err(|e| format!("n = {n}, k = {k}: {e}"))?;
            ensure!(v.is_universal(), "n = {n}, k = {k}: {v:?}");
            checked += 1;
        }
    }
    Ok(format!("{checked} sets with n ≤ 64, k ≤ 3 verified exhaustively"))
}

fn gapcover(dir: &Path, args: &[&str]) -> Result<(i32, String), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_gapcover"))
        .current_dir(dir)
        .env_remove("GAPCOVER_BUDGET")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = o.status.code().unwrap_or(-1);
    if code == 2 {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)));
    }
    Ok((code, String::from_utf8_lossy(&o.stdout).into_owned()))
}

const INPUTS: [(&str, &str); 4] = [
    ("sat.cnf", "p cnf 3 3\n1 2 0\n-1 3 0\n-2 -3 0\n"),
    ("unsat.cnf", "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"),
    ("triangle.graph", "k 3\npart 0 3\npart 1 4\npart 2\nedge 0 1\nedge 1 2\nedge 0 2\nedge 3 4\n"),
    ("free.graph", "k 3\npart 0 3\npart 1\npart 2 4\nedge 0 1\nedge 1 2\nedge 3 1\nedge 0 4\n"),
];

/// Runs the four pipelines in `dir` and verifies each one.
fn run_pipelines(dir: &Path) -> Result<Vec<String>, String> {
    for (name, text) in INPUTS {
        fs::write(dir.join(name), text).map_err(|e| e.to_string())?;
    }
    let runs: [(&str, &[&str]); 4] = [
        ("sat", &["pipeline", "sat", "--cnf", "sat.cnf", "-k", "2"]),
        ("unsat", &["pipeline", "sat", "--cnf", "unsat.cnf", "-k", "2"]),
        ("triangle", &["pipeline", "clique", "--graph", "triangle.graph"]),
        ("free", &["pipeline", "clique", "--graph", "free.graph"]),
    ];
    let mut summaries = Vec::new();
    for (name, args) in runs {
        let (code, _) = gapcover(dir, args)?;
        if code != 0 {
            return Err(format!("{name}: pipeline exited {code}"));
        }
        let prov = format!("{name}.gapped.prov.json");
        let (code, out) = gapcover(dir, &["verify", "pipeline", "--provenance", &prov])?;
        let mut lines = out.lines();
        let header = lines.next().unwrap_or_default();
        let verdicts: Vec<&str> = lines.collect();
        let mut passes = 0;
        for l in &verdicts {
            match l.split_whitespace().nth(1) {
                Some("PASS") => passes += 1,
                Some("N/A") => {}
                _ => return Err(format!("{name}: {l}")),
            }
        }
        if code != 0 || passes == 0 || verdicts.len() < 3 {
            return Err(format!("{name}: exit {code}, {passes} PASS lines\n{out}"));
        }
        let answer = if header.contains("yes-instance") { "yes" } else { "no" };
        summaries.push(format!("{name} ({answer}, {passes} PASS)"));
    }
    Ok(summaries)
}

fn end_to_end() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let summaries = run_pipelines(dir.path())?;
    let expected = ["sat (yes", "unsat (no", "triangle (yes", "free (no"];
    for (s, e) in summaries.iter().zip(expected) {
        ensure!(s.starts_with(e), "unexpected source answer: {s}");
    }
    Ok(summaries.join(", "))
}

fn hashes(dir: &Path) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let bytes = fs::read(&path).map_err(|e| e.to_string())?;
        out.insert(path.file_name().unwrap().to_string_lossy().into_owned(), sha256_hex(&bytes));
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let mut runs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        run_pipelines(dir.path())?;
        for args in [
            &["--seed", "9", "gadget", "build", "-k", "2", "-n", "6", "--h", "4", "--out", "g.gad"][..],
            &["--seed", "9", "universal", "build", "-n", "40", "-k", "3", "--out", "u.txt"],
            &["--seed", "9", "pipeline", "ksum", "--lists", "l.txt", "--out", "ks"],
        ] {
            fs::write(dir.path().join("l.txt"), "3 -5 1\n5 2\n").map_err(|e| e.to_string())?;
            gapcover(dir.path(), args)?;
        }
        runs.push(hashes(dir.path())?);
    }
    ensure!(runs[0] == runs[1], "artifact hashes differ: {:?} vs {:?}", runs[0], runs[1]);
    Ok(format!("{} artifacts byte-identical across two runs", runs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("gadget G-properties", gadget_properties),
        ("hypercube two-sided contract", hypercube_two_sided),
        ("universe-size exactness", universe_sizes),
        ("SAT front end", sat_front_end),
        ("clique front end", clique_front_end),
        ("vector-sum front end", vectorsum_front_end),
        ("k-SUM to vector-sum biconditional", ksum_biconditional),
        ("greedy ratio", greedy_ratio),
        ("universal sets", universal_sets),
        ("end-to-end pipelines", end_to_end),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
