//! One function per subcommand, each returning the full JSON report.

use std::path::Path;

use serde_json::{json, Value};

use acyl::census::{
    max_generating_size, max_generating_size_alternative, presentation_count_bound, surgery_bounds,
    surgery_bounds_split, three_manifold_bound, triangular_presentation, LogBound,
};
use acyl::entropy::{cardinality_rhs, certify_with_run, growth, lower_from_schottky, Verdict};
use acyl::group::{enumerate_ball, BallOptions, GraphOfGroups, NormalForm};
use acyl::orbifold::{
    classify, euler_char, format_rational, presentation, splitting, splitting_consistency,
    OrbifoldError, Signature,
};
use acyl::schottky::{
    free_basis_certificate, recheck_hypothesis, theorem_a_pipeline, verify_freeness,
    verify_pingpong, Core, HypothesisData, LemmaKind, PipelineRun, SchottkyCertificate,
    SchottkyError, SymSet,
};
use acyl::smallcancel::{
    relator_set, triangle_order_bound, triangle_order_bound_ceiling, verify_wr_injection,
};
use acyl::tree::{acylindricity_probe, Classification, Vertex};

use crate::{load_group, CensusCommand, Command, Failure, EXIT_USAGE};

/// Word length and vertex radius of the default acylindricity probe.
const PROBE_WORD_LEN: usize = 3;
const PROBE_RADIUS: u64 = 6;
/// Samples of the seeded closure soundness check.
const SOUNDNESS_SAMPLES: usize = 200;

fn report(command: &str, inputs: Value, results: Value, warnings: Vec<String>) -> Value {
    json!({ "command": command, "inputs": inputs, "results": results, "warnings": warnings })
}

fn file_name(source: &str) -> String {
    Path::new(source)
        .file_name()
        .map_or_else(|| source.to_string(), |n| n.to_string_lossy().into_owned())
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        kind: "usage",
        message: message.into(),
        position: None,
    }
}

fn schottky_failure(e: SchottkyError) -> Failure {
    match e {
        SchottkyError::Group(g) => g.into(),
        other => Failure::domain("schottky", other.to_string()),
    }
}

fn ball(g: &GraphOfGroups, radius: usize) -> Result<Vec<NormalForm>, Failure> {
    Ok(enumerate_ball(g, &g.generator_elements(), radius, &BallOptions::default())?.elements())
}

fn vertex(g: &GraphOfGroups, v: &Vertex) -> String {
    if v.rep.is_identity() {
        format!("v{}", v.orbit)
    } else {
        format!("{}.v{}", g.format(&v.rep), v.orbit)
    }
}

pub(crate) fn dispatch(command: &Command) -> Result<Value, Failure> {
    match command {
        Command::Classify {
            group,
            element,
            window,
        } => classify_cmd(&group.group, element, *window),
        Command::Extract {
            group,
            ball,
            k,
            window,
            seed,
            samples,
            verify_len,
        } => extract_cmd(
            &group.group,
            *ball,
            *k,
            *window,
            *seed,
            *samples,
            *verify_len,
        ),
        Command::Verify {
            group,
            certificate,
            verify_len,
            window,
            seed,
            samples,
        } => verify_cmd(
            &group.group,
            certificate,
            *verify_len,
            *window,
            *seed,
            *samples,
        ),
        Command::Entropy {
            group,
            n,
            ball,
            schottky,
            k,
        } => entropy_cmd(&group.group, *n, *ball, *schottky, *k),
        Command::Certify {
            group,
            ball,
            k,
            verify_len,
        } => certify_cmd(&group.group, *ball, *k, *verify_len),
        Command::Smallcancel { pqr, blocks, e, d } => smallcancel_cmd(pqr, *blocks, *e, *d),
        Command::Orbifold { signature } => orbifold_cmd(signature),
        Command::Census { which } => census_cmd(which),
    }
}

fn classify_cmd(source: &str, element: &str, window: u64) -> Result<Value, Failure> {
    let g = load_group(source)?;
    let x = g.parse_word(element)?;
    let results = match g.classify(&x, window) {
        Classification::Elliptic {
            fix_window,
            diameter,
            center,
        } => json!({
            "type": "elliptic",
            "normalForm": g.format(&x),
            "center": vertex(&g, &center),
            "fixedDiameter": diameter,
            "fixedWindow": fix_window.iter().map(|v| vertex(&g, v)).collect::<Vec<_>>(),
        }),
        Classification::Hyperbolic {
            translation_length,
            axis_window,
        } => json!({
            "type": "hyperbolic",
            "normalForm": g.format(&x),
            "translationLength": translation_length,
            "axisWindow": axis_window.vertices.iter().map(|v| vertex(&g, v)).collect::<Vec<_>>(),
        }),
    };
    let inputs = json!({ "group": file_name(source), "element": element, "window": window });
    Ok(report("classify", inputs, results, vec![]))
}

/// Probed lower bound for the acylindricity constant, with a warning when the search window
/// may have cut it short.
fn probe_k(g: &GraphOfGroups, warnings: &mut Vec<String>) -> Result<u64, Failure> {
    let p = acylindricity_probe(g, &g.generator_elements(), PROBE_WORD_LEN, PROBE_RADIUS)?;
    if p.window_limited {
        warnings.push(format!(
            "probed k = {} reached the search radius {PROBE_RADIUS}; the true constant may be larger",
            p.k_lower
        ));
    }
    Ok(p.k_lower)
}

fn hypothesis_json(g: &GraphOfGroups, h: &HypothesisData) -> Value {
    let mut v = match h {
        HypothesisData::Agglomerated {
            tau,
            segment_length,
            diam_t_prime,
        } => json!({
            "kind": "agglomerated", "tau": tau, "segmentLength": segment_length, "diamTPrime": diam_t_prime,
        }),
        HypothesisData::Sparse {
            tau,
            pivot,
            intersections,
        } => json!({
            "kind": "sparse", "tau": tau, "pivot": g.format(pivot), "intersections": intersections,
        }),
        HypothesisData::SmallProjections { tau, spreads } => json!({
            "kind": "small_projections", "tau": tau, "spreads": spreads,
        }),
        HypothesisData::Sequential {
            tau,
            signs,
            spreads,
        } => json!({
            "kind": "sequential", "tau": tau, "signs": signs, "spreads": spreads,
        }),
        HypothesisData::FreeBasis { factors } => {
            json!({ "kind": "free_basis", "factors": factors })
        }
    };
    v["holds"] = json!(h.holds());
    v["description"] = json!(h.describe());
    v
}

fn certificate_json(g: &GraphOfGroups, c: &SchottkyCertificate, sym: Option<&SymSet>) -> Value {
    let generators: Vec<Value> = c
        .generators
        .iter()
        .zip(&c.words)
        .map(|(x, w)| {
            let mut e = json!({ "normalForm": g.format(x) });
            if let Some(s) = sym {
                e["word"] = json!(s.format_word(g, w));
            }
            e
        })
        .collect();
    json!({
        "lemma": c.lemma.name(),
        "rank": c.rank,
        "maxSLength": c.max_s_length,
        "sourceSize": c.source_size,
        "generators": generators,
        "cores": c.cores.iter().map(|k| json!({ "tau": k.tau, "lo": k.lo, "hi": k.hi })).collect::<Vec<_>>(),
        "hypothesis": hypothesis_json(g, &c.hypothesis),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key)
        .ok_or_else(|| Failure::parse(format!("certificate lacks `{key}`")))
}

fn as_u64(v: &Value, key: &str) -> Result<u64, Failure> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| Failure::parse(format!("`{key}` is not a natural number")))
}

fn as_i64(v: &Value, key: &str) -> Result<i64, Failure> {
    field(v, key)?
        .as_i64()
        .ok_or_else(|| Failure::parse(format!("`{key}` is not an integer")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value, key: &str) -> Result<T, Failure> {
    serde_json::from_value(field(v, key)?.clone())
        .map_err(|e| Failure::parse(format!("`{key}`: {e}")))
}

/// Rebuilds a certificate from the `certificate` object of an `extract` report.
pub fn certificate_from_json(g: &GraphOfGroups, v: &Value) -> Result<SchottkyCertificate, Failure> {
    let lemma = match field(v, "lemma")?.as_str() {
        Some("Agglomerated4thPowers") => LemmaKind::Agglomerated4thPowers,
        Some("SparseDropPivot") => LemmaKind::SparseDropPivot,
        Some("SmallProjections") => LemmaKind::SmallProjections,
        Some("SequentialConjugated") => LemmaKind::SequentialConjugated,
        Some("FreeBasis") => LemmaKind::FreeBasis,
        other => return Err(Failure::parse(format!("unknown lemma {other:?}"))),
    };
    let gens = field(v, "generators")?
        .as_array()
        .ok_or_else(|| Failure::parse("`generators` is not a list"))?;
    let generators = gens
        .iter()
        .map(|e| {
            let text = field(e, "normalForm")?
                .as_str()
                .ok_or_else(|| Failure::parse("`normalForm` is not a string"))?;
            Ok(g.parse_word(text)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let cores_v = field(v, "cores")?
        .as_array()
        .ok_or_else(|| Failure::parse("`cores` is not a list"))?;
    let cores = cores_v
        .iter()
        .map(|c| {
            Ok(Core {
                tau: as_u64(c, "tau")?,
                lo: as_i64(c, "lo")?,
                hi: as_i64(c, "hi")?,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let h = field(v, "hypothesis")?;
    let hypothesis = match field(h, "kind")?.as_str() {
        Some("agglomerated") => HypothesisData::Agglomerated {
            tau: as_u64(h, "tau")?,
            segment_length: as_i64(h, "segmentLength")?,
            diam_t_prime: as_u64(h, "diamTPrime")?,
        },
        Some("sparse") => HypothesisData::Sparse {
            tau: as_u64(h, "tau")?,
            pivot: g.parse_word(field(h, "pivot")?.as_str().unwrap_or_default())?,
            intersections: from_value(h, "intersections")?,
        },
        Some("small_projections") => HypothesisData::SmallProjections {
            tau: as_u64(h, "tau")?,
            spreads: from_value(h, "spreads")?,
        },
        Some("sequential") => HypothesisData::Sequential {
            tau: as_u64(h, "tau")?,
            signs: from_value(h, "signs")?,
            spreads: from_value(h, "spreads")?,
        },
        Some("free_basis") => HypothesisData::FreeBasis {
            factors: from_value(h, "factors")?,
        },
        other => return Err(Failure::parse(format!("unknown hypothesis {other:?}"))),
    };
    let rank = as_u64(v, "rank")? as usize;
    if rank != generators.len() || (lemma != LemmaKind::FreeBasis && cores.len() != rank) {
        return Err(Failure::parse(
            "rank disagrees with the generator or core count",
        ));
    }
    Ok(SchottkyCertificate {
        words: vec![Vec::new(); generators.len()],
        generators,
        rank,
        lemma,
        hypothesis,
        cores,
        max_s_length: as_u64(v, "maxSLength")? as usize,
        source_size: as_u64(v, "sourceSize")? as usize,
    })
}

/// Runs the three independent checks on a certificate.
fn verification_json(
    g: &GraphOfGroups,
    c: &SchottkyCertificate,
    verify_len: usize,
    window: u64,
    samples: usize,
    seed: u64,
) -> (bool, Value) {
    let free = verify_freeness(g, c, verify_len);
    let pp = verify_pingpong(g, c, window, samples, seed);
    let hyp = recheck_hypothesis(g, c);
    let ok = free.ok && pp.ok && hyp.is_ok();
    let v = json!({
        "freeness": { "ok": free.ok, "maxLength": verify_len, "wordsChecked": free.checked, "witness": free.witness },
        "pingpong": { "ok": pp.ok, "radius": window, "samples": samples, "seed": seed, "verticesChecked": pp.checked, "witness": pp.witness },
        "hypothesis": { "ok": hyp.is_ok(), "error": hyp.err().map(|e| e.to_string()) },
        "ok": ok,
    });
    (ok, v)
}

fn default_window(tau: u64) -> u64 {
    2 * (4 * tau + 2)
}

fn run_json(run: &PipelineRun) -> Value {
    json!({
        "k": run.k,
        "tau": run.tau,
        "branch": format!("{:?}", run.branch),
        "familySize": run.family_size,
        "refinement": format!("{:?}", run.refined.kind),
        "nerveNodes": run.nerve.as_ref().map(|n| n.nodes.len()),
        "rankBound": run.rank_bound,
        "lengthBound": run.length_bound,
    })
}

fn extract_cmd(
    source: &str,
    radius: usize,
    k: Option<u64>,
    window: Option<u64>,
    seed: u64,
    samples: usize,
    verify_len: usize,
) -> Result<Value, Failure> {
    let g = load_group(source)?;
    let mut warnings = Vec::new();
    let k = match k {
        Some(k) => k,
        None => probe_k(&g, &mut warnings)?,
    };
    let s = ball(&g, radius)?;
    let run = theorem_a_pipeline(&g, &s, k).map_err(schottky_failure)?;
    let c = &run.certificate;
    let window = window.unwrap_or_else(|| default_window(run.tau));
    let (ok, verification) = verification_json(&g, c, verify_len, window, samples, seed);
    if !ok {
        warnings.push("the extracted certificate failed verification".into());
    }
    let mut pipeline = run_json(&run);
    pipeline["rankWithinBound"] = json!(c.rank >= run.rank_bound);
    pipeline["lengthWithinBound"] = json!(c.max_s_length <= run.length_bound);
    let inputs = json!({
        "group": file_name(source), "ball": radius, "k": k, "window": window,
        "seed": seed, "samples": samples, "verifyLen": verify_len,
    });
    let results = json!({
        "pipeline": pipeline,
        "certificate": certificate_json(&g, c, Some(&run.symmetric)),
        "verification": verification,
    });
    Ok(report("extract", inputs, results, warnings))
}

fn verify_cmd(
    source: &str,
    path: &Path,
    verify_len: usize,
    window: Option<u64>,
    seed: u64,
    samples: usize,
) -> Result<Value, Failure> {
    let g = load_group(source)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::domain("io", format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure {
        position: Some((e.line(), e.column())),
        ..Failure::parse(format!("{}: {e}", path.display()))
    })?;
    let cert_v = doc.pointer("/results/certificate").unwrap_or(&doc);
    let c = certificate_from_json(&g, cert_v)?;
    // the window the report was produced with, else one derived from the smallest core
    let tau = c.cores.iter().map(|k| k.tau).min().unwrap_or(0);
    let window = window
        .or_else(|| doc.pointer("/inputs/window").and_then(Value::as_u64))
        .unwrap_or_else(|| default_window(tau));
    let (ok, verification) = verification_json(&g, &c, verify_len, window, samples, seed);
    let mut warnings = Vec::new();
    if !ok {
        warnings.push("the certificate failed verification".into());
    }
    let inputs = json!({
        "group": file_name(source), "certificate": file_name(&path.to_string_lossy()),
        "window": window, "seed": seed, "samples": samples, "verifyLen": verify_len,
    });
    let results = json!({ "rank": c.rank, "lemma": c.lemma.name(), "verification": verification });
    Ok(report("verify", inputs, results, warnings))
}

fn generating_set(g: &GraphOfGroups, radius: Option<usize>) -> Result<Vec<NormalForm>, Failure> {
    match radius {
        Some(r) => ball(g, r),
        None => Ok(g.generator_elements()),
    }
}

fn entropy_cmd(
    source: &str,
    n: usize,
    radius: Option<usize>,
    schottky: bool,
    k: Option<u64>,
) -> Result<Value, Failure> {
    let g = load_group(source)?;
    let s = generating_set(&g, radius)?;
    let profile = growth(&g, &s, n, &BallOptions::default())?;
    let mut warnings = Vec::new();
    let mut results = json!({
        "growth": profile,
        "consistent": profile.is_consistent(),
    });
    if schottky {
        let sym = SymSet::new(&g, &s)?;
        // a free basis needs no extraction; anything else goes through the pipeline
        let (cert, run) = match free_basis_certificate(&g, &sym) {
            Ok(c) => (c, None),
            Err(_) => {
                let k = match k {
                    Some(k) => k,
                    None => probe_k(&g, &mut warnings)?,
                };
                let run = theorem_a_pipeline(&g, &s, k).map_err(schottky_failure)?;
                (run.certificate.clone(), Some(run))
            }
        };
        let lower = lower_from_schottky(&g, &cert, 6)
            .map_err(|e| Failure::domain("entropy", e.to_string()))?;
        if lower.lower > profile.best_upper + 1e-12 {
            warnings.push("the certified lower bound exceeds the growth estimate".into());
        }
        results["lower"] = json!(lower);
        results["lemma"] = json!(cert.lemma.name());
        results["pipeline"] = run.as_ref().map_or(Value::Null, run_json);
    }
    let inputs =
        json!({ "group": file_name(source), "N": n, "ball": radius, "schottky": schottky, "k": k });
    Ok(report("entropy", inputs, results, warnings))
}

fn certify_cmd(
    source: &str,
    radius: usize,
    k: Option<u64>,
    verify_len: usize,
) -> Result<Value, Failure> {
    let g = load_group(source)?;
    let mut warnings = Vec::new();
    let k = match k {
        Some(k) => k,
        None => probe_k(&g, &mut warnings)?,
    };
    let s = ball(&g, radius)?;
    let (r, run) = certify_with_run(&g, &s, k, verify_len).map_err(|e| match e {
        acyl::entropy::EntropyError::Group(e) => e.into(),
        other => Failure::domain("entropy", other.to_string()),
    })?;
    if r.verdict == Verdict::VacuouslyCertified {
        warnings.push(format!(
            "|S| = {} gives |S|^(1/32) <= 1 up to rounding, so the cardinality bound is vacuous",
            r.n
        ));
    }
    // the same bound with denominator 80k + 3, which some statements print instead
    let alt = cardinality_rhs(r.n, k)
        .map(|x| x * r.length_bound as f64 / r.alternative_length_bound as f64);
    let alt_holds = alt.map_or(true, |x| r.lower >= x);
    if alt_holds != (r.verdict != Verdict::Violated) {
        warnings.push(format!(
            "the verdict changes with the denominator {} in place of {}",
            r.alternative_length_bound, r.length_bound
        ));
    }
    let mut results = serde_json::to_value(&r).expect("serializable");
    results["verdictText"] = json!(r.verdict.as_str());
    results["alternativeRhs"] = json!(alt);
    results["pipeline"] = run_json(&run);
    results["certificate"] = certificate_json(&g, &run.certificate, Some(&run.symmetric));
    let window = default_window(run.tau);
    let inputs = json!({ "group": file_name(source), "ball": radius, "k": k, "verifyLen": verify_len, "window": window });
    Ok(report("certify", inputs, results, warnings))
}

fn parse_triple(text: &str) -> Result<(u32, u32, u32), Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let nums: Result<Vec<u32>, _> = parts.iter().map(|p| p.parse::<u32>()).collect();
    match nums.as_deref() {
        Ok([p, q, r]) => Ok((*p, *q, *r)),
        _ => Err(Failure {
            position: Some((1, 1)),
            ..Failure::parse(format!("expected `p,q,r`, got `{text}`"))
        }),
    }
}

fn smallcancel_cmd(
    pqr: &str,
    blocks: usize,
    e: Option<f64>,
    d: Option<f64>,
) -> Result<Value, Failure> {
    let (p, q, r) = parse_triple(pqr)?;
    let domain =
        |e: acyl::smallcancel::SmallCancelError| Failure::domain("smallcancel", e.to_string());
    let rs = relator_set(p, q, r).map_err(domain)?;
    let injection = verify_wr_injection(p, q, r, blocks).map_err(domain)?;
    let soundness = rs.soundness_check(SOUNDNESS_SAMPLES, 0).map_err(domain)?;
    let mut warnings = Vec::new();
    let mut results = json!({
        "relators": rs.relators.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "relatorCount": rs.relators.len(),
        "maxPieceSyllables": rs.max_piece_syllables,
        "c16": rs.c16,
        "c14": rs.c14,
        "t4": rs.t4,
        "verdict": rs.verdict,
        "injection": injection,
        "soundness": soundness,
    });
    match (e, d) {
        (Some(e), Some(d)) => {
            let (floor, ceil) = (
                triangle_order_bound(e, d),
                triangle_order_bound_ceiling(e, d),
            );
            results["orderBound"] = json!({ "E": e, "D": d, "r": floor, "rCeilingReading": ceil });
            if r as u64 > floor {
                warnings.push(format!(
                    "r = {r} exceeds the order bound {floor} for E = {e}, D = {d}"
                ));
            }
        }
        (None, None) => {}
        _ => return Err(usage("--E and --D must be given together")),
    }
    let inputs = json!({ "p": p, "q": q, "r": r, "blocks": blocks, "E": e, "D": d });
    Ok(report("smallcancel", inputs, results, warnings))
}

fn orbifold_cmd(text: &str) -> Result<Value, Failure> {
    let sig = Signature::parse(text).map_err(|e| match e {
        OrbifoldError::Parse(_) => Failure {
            position: Some((1, 1)),
            ..Failure::parse(e.to_string())
        },
        other => Failure::domain("orbifold", other.to_string()),
    })?;
    let class = classify(&sig);
    let pres = presentation(&sig);
    let mut warnings = Vec::new();
    let split = match splitting(&sig) {
        Ok(s) => {
            let (whole, glued) = splitting_consistency(&sig, &s);
            json!({
                "kind": s.kind,
                "edge": s.edge,
                "cut": s.cut,
                "pieces": s.pieces.iter().map(|p| json!({ "signature": p.to_string(), "eulerChar": format_rational(&euler_char(p)) })).collect::<Vec<_>>(),
                "gluedEulerChar": format_rational(&s.glued_euler_char()),
                "acylindricity": s.acylindricity,
                "executable": s.executable,
                "groupFile": s.group_file,
                "abelianization": { "whole": whole.to_string(), "glued": glued.to_string(), "agree": whole == glued },
            })
        }
        Err(e) => {
            warnings.push(e.to_string());
            Value::Null
        }
    };
    let results = json!({
        "signature": sig.to_string(),
        "orientable": sig.orientable(),
        "eulerChar": format_rational(&euler_char(&sig)),
        "type": class.kind,
        "triangular": class.triangular,
        "presentation": { "generators": pres.generators, "relators": pres.formatted_relators() },
        "abelianization": pres.abelian_invariants().to_string(),
        "splitting": split,
    });
    Ok(report(
        "orbifold",
        json!({ "signature": text }),
        results,
        warnings,
    ))
}

fn bound_json(b: &LogBound) -> Value {
    json!({
        "expression": b.expression,
        "log": b.log_value,
        "log10": b.log10(),
        "scientific": b.scientific(),
    })
}

fn census_cmd(which: &CensusCommand) -> Result<Value, Failure> {
    match which {
        CensusCommand::MaxGens { k, e } => {
            let b = max_generating_size(*k, *e);
            let alt = max_generating_size_alternative(*k, *e);
            let warnings = vec![format!(
                "the exponent 80(k+3)E = {} is used; the alternative form (80k+3)E = {} gives log10 {:.6}",
                80 * (k + 3),
                80 * k + 3,
                alt.log10()
            )];
            let results = json!({ "bound": bound_json(&b), "alternative": bound_json(&alt) });
            Ok(report(
                "census max-gens",
                json!({ "k": k, "E": e }),
                results,
                warnings,
            ))
        }
        CensusCommand::PresCount { n, l } => {
            let results = json!({ "bound": bound_json(&presentation_count_bound(*n, *l)) });
            Ok(report(
                "census pres-count",
                json!({ "N": n, "l": l }),
                results,
                vec![],
            ))
        }
        CensusCommand::ThreeManifolds { e, d } => {
            let results = json!({ "bound": bound_json(&three_manifold_bound(*e, *d)) });
            Ok(report(
                "census 3mfd",
                json!({ "E": e, "D": d }),
                results,
                vec![],
            ))
        }
        CensusCommand::Surgery { n, split } => {
            let (curves, rank) = surgery_bounds(*n);
            let mut results = json!({ "mMax": curves, "rMax": rank });
            if let Some(text) = split {
                let parts: Vec<Result<u64, _>> =
                    text.split(',').map(|p| p.trim().parse::<u64>()).collect();
                let (free, rest) = match parts.as_slice() {
                    [Ok(a), Ok(b)] => (*a, *b),
                    _ => {
                        return Err(Failure {
                            position: Some((1, 1)),
                            ..Failure::parse(format!("expected `n,k`, got `{text}`"))
                        })
                    }
                };
                if free + rest != *n {
                    return Err(usage(format!(
                        "split {free} + {rest} does not add up to N = {n}"
                    )));
                }
                let (c, r) = surgery_bounds_split(free, rest);
                results["split"] = json!({ "n": free, "k": rest, "mMax": c, "rMax": r });
            }
            Ok(report(
                "census surgery",
                json!({ "N": n, "split": split }),
                results,
                vec![],
            ))
        }
        CensusCommand::TriPres {
            group,
            ball: m,
            radius,
        } => {
            let g = load_group(&group.group)?;
            let s = g.generator_elements();
            let tp = triangular_presentation(&g, &s, *m, &BallOptions::default())?;
            let mut warnings = Vec::new();
            let comparison = match radius {
                Some(r) => match tp.compare_balls(&g, &s, *r, 100_000) {
                    Ok(c) => {
                        json!({ "original": c.original, "presented": c.presented, "order": c.order, "matches": c.matches() })
                    }
                    Err(e) => {
                        warnings.push(format!("ball comparison skipped: {e}"));
                        Value::Null
                    }
                },
                None => Value::Null,
            };
            let results = json!({
                "generators": tp.presentation.generators,
                "relatorCount": tp.presentation.relators.len(),
                "relators": tp.presentation.formatted_relators(),
                "abelianization": tp.presentation.abelian_invariants().to_string(),
                "comparison": comparison,
            });
            let inputs = json!({ "group": file_name(&group.group), "ball": m, "radius": radius });
            Ok(report("census tri-pres", inputs, results, warnings))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_drop_directories() {
        assert_eq!(file_name("/tmp/x/modular.grp"), "modular.grp");
        assert_eq!(file_name("f2.grp"), "f2.grp");
    }

    #[test]
    fn triples() {
        assert_eq!(parse_triple("3, 4,5").unwrap(), (3, 4, 5));
        assert_eq!(parse_triple("3,4").unwrap_err().code, crate::EXIT_PARSE);
        assert!(parse_triple("3,x,5").is_err());
    }

    #[test]
    fn window_doubles_the_lemma_radius() {
        assert_eq!(default_window(6), 52);
        assert_eq!(default_window(0), 4);
    }

    #[test]
    fn certificates_survive_json() {
        let g = load_group("modular.grp").unwrap();
        let s = ball(&g, 3).unwrap();
        let run = theorem_a_pipeline(&g, &s, 0).unwrap();
        let v = certificate_json(&g, &run.certificate, Some(&run.symmetric));
        let back = certificate_from_json(&g, &v).unwrap();
        let c = &run.certificate;
        assert_eq!(
            (&back.generators, &back.cores, &back.hypothesis),
            (&c.generators, &c.cores, &c.hypothesis)
        );
        assert_eq!(
            (back.rank, back.lemma, back.max_s_length),
            (c.rank, c.lemma, c.max_s_length)
        );
    }
}
