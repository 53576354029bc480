//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use acyl::census::{
    max_generating_size, max_generating_size_alternative, presentation_count_bound, surgery_bounds,
    three_manifold_bound, triangular_presentation,
};
use acyl::entropy::{certify_entropy_cardinality, growth, lower_from_schottky, Verdict};
use acyl::group::{enumerate_ball, load_group_file, parse_group, BallOptions, GraphOfGroups};
use acyl::orbifold::{
    classify, euler_char, format_rational, splitting, OrbifoldError, OrbifoldType, Signature,
    SplitKind,
};
use acyl::schottky::{
    free_basis_certificate, theorem_a_pipeline, tree_shape, verify_freeness, verify_pingpong,
    SymSet,
};
use acyl::smallcancel::{relator_set, verify_wr_injection, Metric};
use acyl::tree::{acylindricity_probe, axis_law_check};

#[path = "common/cases.rs"]
mod cases;

type Outcome = Result<String, String>;

fn groups_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../groups")
}

fn bundled(name: &str) -> Result<GraphOfGroups, String> {
    load_group_file(&groups_dir().join(name)).map_err(|e| format!("{name}: {e}"))
}

fn probed_k(g: &GraphOfGroups) -> Result<(u64, bool), String> {
    let p = acylindricity_probe(g, &g.generator_elements(), 3, 6).map_err(|e| e.to_string())?;
    Ok((p.k_lower, p.window_limited))
}

fn within(start: Instant, limit: u64, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > Duration::from_secs(limit) {
        return Err(format!("{what} took {t:.1?}, limit {limit} s"));
    }
    Ok(())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn free_group(r: usize) -> Result<GraphOfGroups, String> {
    let mut text = String::from("[group]\nkind = free_product\n");
    for i in 0..r {
        text.push_str(&format!("vertex V{i} = infinite x{i}\n"));
    }
    parse_group(&text).map_err(|e| e.to_string())
}

fn free_group_entropy() -> Outcome {
    let start = Instant::now();
    for r in 2..=4 {
        let g = free_group(r)?;
        let s = SymSet::new(&g, &g.generator_elements()).map_err(|e| e.to_string())?;
        let c = free_basis_certificate(&g, &s).map_err(|e| e.to_string())?;
        let lower = lower_from_schottky(&g, &c, 6)
            .map_err(|e| e.to_string())?
            .lower;
        let want = ((2 * r - 1) as f64).ln();
        ensure(lower == want, || {
            format!("F{r}: lower {lower} != log {}", 2 * r - 1)
        })?;
    }
    let f2 = bundled("f2.grp")?;
    let p = growth(&f2, &f2.generator_elements(), 10, &BallOptions::default())
        .map_err(|e| e.to_string())?;
    let gap = p.best_upper - 3f64.ln();
    ensure(gap.abs() <= 0.07, || {
        format!("F2 bestUpper {} is {gap:.4} from log 3", p.best_upper)
    })?;
    within(start, 10, "free-group entropy")?;
    Ok(format!(
        "log(2r-1) exact for r = 2,3,4; F2 bestUpper - log 3 = {gap:.4} in {:.1?}",
        start.elapsed()
    ))
}

fn theorem_a() -> Outcome {
    let mut notes = Vec::new();
    for name in ["modular.grp", "z2z2z3.grp"] {
        let start = Instant::now();
        let g = bundled(name)?;
        let (k, _) = probed_k(&g)?;
        for radius in [3, 4] {
            let s = enumerate_ball(&g, &g.generator_elements(), radius, &BallOptions::default())
                .map_err(|e| e.to_string())?
                .elements();
            let run =
                theorem_a_pipeline(&g, &s, k).map_err(|e| format!("{name} ball {radius}: {e}"))?;
            let c = &run.certificate;
            let at = format!("{name} ball {radius}");
            ensure(c.max_s_length as u64 <= 80 * (k + 3), || {
                format!("{at}: maxSLength {}", c.max_s_length)
            })?;
            ensure(c.rank >= run.rank_bound, || {
                format!("{at}: rank {} < {}", c.rank, run.rank_bound)
            })?;
            let f = verify_freeness(&g, c, 6);
            ensure(f.ok, || format!("{at}: relation {:?}", f.witness))?;
            let window = 2 * (4 * run.tau + 2);
            let pp = verify_pingpong(&g, c, window, 400, 0);
            ensure(pp.ok, || format!("{at}: ping-pong {:?}", pp.witness))?;
            let report =
                certify_entropy_cardinality(&g, &s, k, 6).map_err(|e| format!("{at}: {e}"))?;
            ensure(report.verdict != Verdict::Violated, || {
                format!("{at}: verdict violated")
            })?;
            notes.push(format!(
                "{name}/{radius}: rank {} len {} {}",
                c.rank,
                c.max_s_length,
                report.verdict.as_str()
            ));
        }
        within(start, 60, name)?;
    }
    Ok(notes.join("; "))
}

const ACYLINDRICAL: [&str; 7] = [
    "modular.grp",
    "z2z2z3.grp",
    "f2.grp",
    "f3.grp",
    "s3s3.grp",
    "d4s3.grp",
    "hnn_z2.grp",
];

fn axis_law() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for name in ACYLINDRICAL {
        let g = bundled(name)?;
        let (k, limited) = probed_k(&g)?;
        ensure(!limited, || format!("{name}: probe hit its window"))?;
        let r = axis_law_check(&g, &g.generator_elements(), 6, k).map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty(), || {
            format!("{name}: {} violations", r.violations.len())
        })?;
        pairs += r.candidate_pairs;
    }
    within(start, 120, "axis law")?;
    Ok(format!(
        "{pairs} candidate pairs in S^6 over {} groups, no violations, {:.1?}",
        ACYLINDRICAL.len(),
        start.elapsed()
    ))
}

fn tree_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random = 0;
    while random < 1000 {
        let n = rng.gen_range(1..=200);
        let mut adj = vec![Vec::new(); n];
        for v in 1..n {
            let p = rng.gen_range(0..v);
            adj[v].push(p);
            adj[p].push(v);
        }
        let shape = tree_shape(&adj).ok_or("random graph is not a tree")?;
        if shape.diameter % 2 == 1 {
            continue;
        }
        random += 1;
        ensure(shape.leaves * shape.diameter >= 2 * (n - 1), || {
            format!("random tree with n = {n}")
        })?;
    }
    let mut nerves = 0;
    for name in ACYLINDRICAL {
        let g = bundled(name)?;
        let (k, _) = probed_k(&g)?;
        for radius in 1..=3 {
            let s = enumerate_ball(&g, &g.generator_elements(), radius, &BallOptions::default())
                .map_err(|e| e.to_string())?
                .elements();
            let Ok(run) = theorem_a_pipeline(&g, &s, k) else {
                continue;
            };
            if let Some(graph) = &run.nerve {
                let shape = tree_shape(&graph.adjacency())
                    .ok_or_else(|| format!("{name}: nerve graph is not a tree"))?;
                ensure(
                    shape.leaves * shape.diameter >= 2 * (shape.vertices - 1),
                    || format!("{name} ball {radius}"),
                )?;
                nerves += 1;
            }
        }
    }
    Ok(format!(
        "{random} random trees and {nerves} pipeline nerve graphs"
    ))
}

fn small_cancellation() -> Outcome {
    let mut count = 0;
    for p in 3..=12 {
        for q in p..=12 {
            for r in q.max(4)..=12 {
                let want = if q >= 4 {
                    Metric::C16
                } else if p == 3 && q == 3 {
                    Metric::C14T4
                } else {
                    continue;
                };
                let rs = relator_set(p, q, r).map_err(|e| e.to_string())?;
                ensure(rs.verdict == want, || {
                    format!("({p},{q},{r}): {:?}, expected {want:?}", rs.verdict)
                })?;
                let inj = verify_wr_injection(p, q, r, 3).map_err(|e| e.to_string())?;
                ensure(inj.holds, || {
                    format!("({p},{q},{r}): W_r collision {:?}", inj.witness)
                })?;
                count += 1;
            }
        }
    }
    let mut sampled = 0;
    for (i, (p, q, r)) in [(3, 3, 4), (3, 3, 7), (3, 4, 5), (4, 4, 4), (5, 6, 12)]
        .into_iter()
        .enumerate()
    {
        let s = relator_set(p, q, r)
            .and_then(|rs| rs.soundness_check(40, i as u64))
            .map_err(|e| e.to_string())?;
        ensure(s.holds, || {
            format!("({p},{q},{r}): closure element {:?} missed", s.witness)
        })?;
        sampled += s.samples;
    }
    ensure(sampled == 200, || format!("{sampled} closure samples"))?;
    Ok(format!("{count} signatures with the expected metric and W_r injection; {sampled} closure elements detected"))
}

fn census() -> Outcome {
    let data = include_str!("../../core/tests/data/census_reference.txt");
    let mut checked = 0;
    for line in data.lines().filter(|l| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || format!("malformed reference line `{line}`");
        let num = |i: usize| f.get(i).and_then(|x| x.parse::<f64>().ok()).ok_or_else(bad);
        let (a, b, want) = (num(1)?, num(2)?, num(3)?);
        let got = match f[0] {
            "max_gens" => max_generating_size(a as u64, b),
            "max_gens_alt" => max_generating_size_alternative(a as u64, b),
            "pres_count" => presentation_count_bound(a as u64, b as u32),
            "three_mfd" => three_manifold_bound(a, b),
            _ => return Err(bad()),
        };
        let rel = (got.log_value - want).abs() / want.abs().max(f64::MIN_POSITIVE);
        ensure(rel <= 1e-12, || format!("{line}: got {}", got.log_value))?;
        checked += 1;
    }
    ensure(surgery_bounds(1) == (2, 3), || {
        format!("surgery_bounds(1) = {:?}", surgery_bounds(1))
    })?;
    Ok(format!(
        "{checked} reference values to 12 digits; surgery_bounds(1) = (2, 3)"
    ))
}

fn orbifolds() -> Outcome {
    let sig = |t: &str| Signature::parse(t).map_err(|e| e.to_string());
    let t = sig("0,0;2,3,7")?;
    let chi = format_rational(&euler_char(&t));
    ensure(chi == "-1/42", || format!("chi(2,3,7) = {chi}"))?;
    let c = classify(&t);
    ensure(
        c.kind == OrbifoldType::HyperbolicType && c.triangular,
        || format!("{c:?}"),
    )?;
    ensure(
        splitting(&t) == Err(OrbifoldError::TriangularOrbifold),
        || "(2,3,7) was split".into(),
    )?;

    let four = sig("0,0;2,2,2,3")?;
    let split = splitting(&four).map_err(|e| e.to_string())?;
    ensure(
        split.kind == SplitKind::Amalgam && split.pieces.len() == 2,
        || format!("{split:?}"),
    )?;
    ensure(split.glued_euler_char() == euler_char(&four), || {
        "piece characteristics do not add up".into()
    })?;

    let z3 = parse_group("[group]\nkind = free_product\nvertex B = cyclic 3 b\n")
        .map_err(|e| e.to_string())?;
    let s = z3.generator_elements();
    let tp =
        triangular_presentation(&z3, &s, 1, &BallOptions::default()).map_err(|e| e.to_string())?;
    let cmp = tp
        .compare_balls(&z3, &s, 3, 10_000)
        .map_err(|e| e.to_string())?;
    ensure(cmp.matches() && cmp.order == 3, || format!("{cmp:?}"))?;
    Ok(format!(
        "chi(2,3,7) = {chi}; (2,2,2,3) splits into {} + {}; Z3 balls {:?}",
        split.pieces[0], split.pieces[1], cmp.presented
    ))
}

fn determinism() -> Outcome {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let run = |threads: &str, args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_acyl"))
            .args(["--threads", threads])
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        Ok(out.stdout)
    };
    for (name, args) in cases::CASES {
        let stored = std::fs::read(golden.join(format!("{name}.json")))
            .map_err(|e| format!("{name}: {e}"))?;
        for threads in ["1", "8", "1"] {
            ensure(run(threads, args)? == stored, || {
                format!("{name} differs with {threads} threads")
            })?;
        }
    }
    Ok(format!(
        "{} golden reports identical across runs and 1 vs 8 threads",
        cases::CASES.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("free-group entropy", free_group_entropy),
        ("free subgroup extraction", theorem_a),
        ("axis intersection law", axis_law),
        ("tree lemma", tree_lemma),
        ("small cancellation", small_cancellation),
        ("census bounds", census),
        ("orbifold calculus", orbifolds),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
