use std::path::PathBuf;

use acyl::group::*;
use acyl::schottky::*;
use acyl::tree::Overlap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bundled(name: &str) -> GraphOfGroups {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../groups")
        .join(name);
    load_group_file(&p).unwrap()
}

/// Acylindrical bundled groups with their acylindricity constants.
const ACYLINDRICAL: [(&str, u64); 7] = [
    ("modular.grp", 0),
    ("z2z2z3.grp", 0),
    ("f2.grp", 0),
    ("f3.grp", 0),
    ("hnn_z2.grp", 0),
    ("s3s3.grp", 1),
    ("d4s3.grp", 2),
];

fn ball(g: &GraphOfGroups, r: usize) -> Vec<NormalForm> {
    enumerate_ball(g, &g.generator_elements(), r, &BallOptions::default())
        .unwrap()
        .elements()
        .into_iter()
        .filter(|x| !x.is_identity())
        .collect()
}

fn untracked(nf: NormalForm) -> Tracked {
    Tracked {
        nf,
        word: Vec::new(),
    }
}

fn family(g: &GraphOfGroups, members: &[NormalForm]) -> PSFamily {
    PSFamily::new(g, members.iter().cloned().map(untracked).collect(), 0).unwrap()
}

fn check_certificate(g: &GraphOfGroups, cert: &SchottkyCertificate, tau: u64) {
    let f = verify_freeness(g, cert, 6);
    assert!(f.ok, "relation {:?}", f.witness);
    let p = verify_pingpong(g, cert, 2 * (4 * tau + 2), 300, 7);
    assert!(p.ok, "ping-pong {:?}", p.witness);
    recheck_hypothesis(g, cert).unwrap();
}

#[test]
fn short_hyperbolic_examples() {
    let f2 = bundled("f2.grp");
    let s = SymSet::new(&f2, &f2.generator_elements()).unwrap();
    let h = short_hyperbolic(&f2, &s).unwrap();
    assert_eq!(h.nf, f2.parse_word("x*y").unwrap());
    assert_eq!(f2.translation_length(&h.nf), 2);

    let m = bundled("modular.grp");
    let s = SymSet::new(
        &m,
        &[m.parse_word("a").unwrap(), m.parse_word("a*b").unwrap()],
    )
    .unwrap();
    assert_eq!(
        short_hyperbolic(&m, &s).unwrap().nf,
        m.parse_word("a*b").unwrap()
    );

    let s = SymSet::new(&m, &[m.parse_word("b").unwrap()]).unwrap();
    assert_eq!(short_hyperbolic(&m, &s), Err(SchottkyError::EllipticAction));
}

#[test]
fn harvested_axes_are_pairwise_distinct() {
    for (name, r) in [("modular.grp", 3), ("f2.grp", 1), ("d4s3.grp", 2)] {
        let g = bundled(name);
        let s = SymSet::new(&g, &ball(&g, r)).unwrap();
        let h = harvest_distinct_axes(&g, &s).unwrap();
        assert!(h.elements.len() >= h.needed);
        assert!(h.elements.len() >= 2);
        let axes: Vec<_> = h.elements.iter().map(|x| g.axis(&x.nf).unwrap()).collect();
        for i in 0..axes.len() {
            assert!(h.elements[i].s_length() <= 20);
            for j in i + 1..axes.len() {
                let o = g.axis_overlap(&axes[i], &axes[j], 200);
                assert!(
                    !matches!(
                        o,
                        Overlap::Intersect {
                            resolved: false,
                            ..
                        }
                    ),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn harvest_falls_back_to_power_conjugates() {
    // powers of h add no new axes, so single conjugations give only three
    let g = bundled("f2.grp");
    let h = g.parse_word("x*y").unwrap();
    let mut s: Vec<NormalForm> = (1..=40).map(|i| g.pow(&h, i)).collect();
    s.push(g.parse_word("x").unwrap());
    let sym = SymSet::new(&g, &s).unwrap();
    assert_eq!(sym.len(), 82);
    let hv = harvest_distinct_axes(&g, &sym).unwrap();
    assert_eq!(hv.branch, HarvestBranch::PowerConjugates);
    assert!(hv.elements.len() >= 4);
    assert!(hv
        .elements
        .iter()
        .all(|x| x.s_length() <= 20 && g.translation_length(&x.nf) == 2));
}

#[test]
fn ps_family_members_are_powers() {
    let g = bundled("modular.grp");
    let s = SymSet::new(&g, &ball(&g, 3)).unwrap();
    let hv = harvest_distinct_axes(&g, &s).unwrap();
    let f = build_ps_family(&g, &s, 0).unwrap();
    assert_eq!(f.len(), hv.elements.len());
    for (m, h) in f.members.iter().zip(&hv.elements) {
        assert_eq!(m.nf, g.pow(&h.nf, 3));
        assert!(m.s_length() <= 60);
    }
    for i in 0..f.len() {
        for j in 0..f.len() {
            if i != j {
                assert!(g.axis_overlap(&f.axes[i], &f.axes[j], f.tau).diameter() < f.tau as i64);
            }
        }
    }
    assert!(matches!(
        f.config,
        FamilyConfig::OneAxisIntersecting { .. } | FamilyConfig::PairwiseDisjoint { .. }
    ));
}

#[test]
fn declared_k_below_probe_is_rejected() {
    let g = bundled("d4s3.grp");
    let s = SymSet::new(&g, &g.generator_elements()).unwrap();
    assert!(matches!(
        build_ps_family(&g, &s, 0),
        Err(SchottkyError::KTooSmall {
            declared: 0,
            lower: 2
        })
    ));
}

/// Conjugates `z h z^-1` whose axes meet the axis of `h` in fewer than `max` edges.
fn crossing_conjugates(g: &GraphOfGroups, h: &NormalForm, max: i64) -> Vec<NormalForm> {
    let ax = g.axis(h).unwrap();
    let mut out: Vec<NormalForm> = Vec::new();
    for z in ball(g, 3) {
        let w = g.conj(&z, h);
        if w == *h || w == g.inverse(h) || out.contains(&w) {
            continue;
        }
        if let Overlap::Intersect {
            lo,
            hi,
            resolved: true,
        } = g.axis_overlap(&ax, &g.axis(&w).unwrap(), 50)
        {
            if hi - lo < max {
                out.push(w);
            }
        }
    }
    out
}

#[test]
fn refine_single_member_is_agglomerated() {
    let g = bundled("f2.grp");
    let f = family(&g, &[g.parse_word("(x*y)^3").unwrap()]);
    assert!(matches!(f.config, FamilyConfig::PairwiseDisjoint { .. }));
    assert_eq!(refine_one_axis(&f), Err(SchottkyError::WrongConfig));
    let r = Refined {
        kind: RefinedKind::Agglomerated,
        pivot: Some(0),
        members: vec![],
        segment: None,
    };
    let s = SymSet::new(&g, &g.generator_elements()).unwrap();
    let cert = extract_schottky(&g, &s, &f, &r).unwrap();
    assert_eq!(cert.rank, 1);
    check_certificate(&g, &cert, f.tau);
}

#[test]
fn refine_agglomerated_fixture() {
    let g = bundled("f2.grp");
    let h = g.parse_word("x*y").unwrap();
    let mut members = vec![g.pow(&h, 3)];
    for w in crossing_conjugates(&g, &h, 3) {
        let mut trial = members.clone();
        trial.push(g.pow(&w, 3));
        if PSFamily::new(&g, trial.iter().cloned().map(untracked).collect(), 0).is_ok() {
            members = trial;
        }
        if members.len() == 4 {
            break;
        }
    }
    assert_eq!(members.len(), 4);
    let f = family(&g, &members);
    assert!(matches!(
        f.config,
        FamilyConfig::OneAxisIntersecting { pivot: 0, .. }
    ));
    let r = refine_one_axis(&f).unwrap();
    assert_eq!(r.kind, RefinedKind::Agglomerated);
    assert!(r.size() >= 2);
    let s = SymSet::new(&g, &g.generator_elements()).unwrap();
    let cert = extract_schottky(&g, &s, &f, &r).unwrap();
    assert_eq!(cert.lemma, LemmaKind::Agglomerated4thPowers);
    assert_eq!(cert.generators[0], g.pow(&h, 12));
    let HypothesisData::Agglomerated {
        tau, diam_t_prime, ..
    } = cert.hypothesis
    else {
        panic!()
    };
    assert!(diam_t_prime < 4 * tau);
    check_certificate(&g, &cert, f.tau);
}

#[test]
fn refine_sparse_fixture() {
    // one crossing conjugate, translated far apart along the pivot axis
    let g = bundled("f2.grp");
    let h = g.parse_word("x*y").unwrap();
    let w = crossing_conjugates(&g, &h, 3)[0].clone();
    let mut members = vec![g.pow(&h, 3)];
    for j in 0..10 {
        members.push(g.pow(&g.conj(&g.pow(&h, 5 * j), &w), 3));
    }
    let f = family(&g, &members);
    assert!(matches!(
        f.config,
        FamilyConfig::OneAxisIntersecting { pivot: 0, .. }
    ));
    let r = refine_one_axis(&f).unwrap();
    assert_eq!(r.kind, RefinedKind::Sparse);
    assert!(
        r.members.len() + 1 >= 4 + 1,
        "sparse size {}",
        r.members.len() + 1
    );
    assert!(!r.members.contains(&0));
    let s = SymSet::new(&g, &g.generator_elements()).unwrap();
    let cert = extract_schottky(&g, &s, &f, &r).unwrap();
    assert_eq!(cert.lemma, LemmaKind::SparseDropPivot);
    assert!(!cert.generators.contains(&members[0]));
    check_certificate(&g, &cert, f.tau);
}

/// A conjugate of `xy` whose axis avoids the vertex fixed by `y`.
fn off_vertex_conjugate(g: &GraphOfGroups) -> NormalForm {
    let h = g.parse_word("x*y").unwrap();
    let v1 = g.base_vertex(1);
    ball(g, 3)
        .into_iter()
        .map(|z| g.conj(&z, &h))
        .find(|w| g.displacement(w, &v1) > 2)
        .unwrap()
}

#[test]
fn two_disjoint_axes_give_the_smallest_nerve_graph() {
    let g = bundled("f2.grp");
    let w = off_vertex_conjugate(&g);
    let y = g.parse_word("y").unwrap();
    let f = family(&g, &[g.pow(&w, 3), g.pow(&g.conj(&y, &w), 3)]);
    let FamilyConfig::PairwiseDisjoint { members } = &f.config else {
        panic!("{:?}", f.config)
    };
    let graph = nerve_graph(&g, &f, members).unwrap();
    let shape = tree_shape(&graph.adjacency()).unwrap();
    assert_eq!((shape.vertices, shape.leaves, shape.diameter), (3, 2, 2));
    assert!(shape.leaves * shape.diameter >= 2 * (shape.vertices - 1));
}

#[test]
fn refine_star_fixture_has_small_projections() {
    // translates of one axis by powers of an elliptic element fixing a vertex off the axis
    let g = bundled("f2.grp");
    let y = g.parse_word("y").unwrap();
    let w = off_vertex_conjugate(&g);
    let members: Vec<NormalForm> = (0..5)
        .map(|i| g.pow(&g.conj(&g.pow(&y, i), &w), 3))
        .collect();
    let f = family(&g, &members);
    let (graph, r) = refine_disjoint(&g, &f).unwrap();
    assert_eq!(
        graph
            .nodes
            .iter()
            .filter(|n| matches!(n, NerveNode::Nerve(_)))
            .count(),
        1
    );
    assert_eq!(r.kind, RefinedKind::SmallProjections);
    assert_eq!(r.members.len(), 5);
    let s = SymSet::new(&g, &g.generator_elements()).unwrap();
    let cert = extract_schottky(&g, &s, &f, &r).unwrap();
    assert_eq!(cert.rank, 5);
    assert!(cert.cores.iter().all(|c| c.length() == 0));
    check_certificate(&g, &cert, f.tau);
}

#[test]
fn refine_chain_fixture_is_sequential() {
    // translates of Ax(h) along an axis crossing it briefly form a chain
    let g = bundled("f2.grp");
    let h = g.parse_word("x*y").unwrap();
    let ax = g.axis(&h).unwrap();
    let t = ball(&g, 4)
        .into_iter()
        .find(|t| {
            g.axis(t)
                .map_or(false, |at| match g.axis_overlap(&at, &ax, 50) {
                    Overlap::Intersect {
                        lo,
                        hi,
                        resolved: true,
                    } => hi - lo + 2 < at.tau as i64,
                    _ => false,
                })
        })
        .unwrap();
    let members: Vec<NormalForm> = (0..5)
        .map(|j| g.pow(&g.conj(&g.pow(&t, j), &h), 3))
        .collect();
    let f = family(&g, &members);
    let (graph, r) = refine_disjoint(&g, &f).unwrap();
    let nerves = graph
        .nodes
        .iter()
        .filter(|n| matches!(n, NerveNode::Nerve(_)))
        .count();
    assert_eq!(nerves, 4);
    assert_eq!(r.kind, RefinedKind::Sequential);
    assert_eq!(r.members.len(), 5);
    let s = SymSet::new(&g, &g.generator_elements()).unwrap();
    let cert = extract_schottky(&g, &s, &f, &r).unwrap();
    assert_eq!(cert.lemma, LemmaKind::SequentialConjugated);
    assert_eq!(cert.rank, 5);
    assert_eq!(cert.generators[0], members[0]);
    assert_eq!(cert.generators[4], members[4]);
    let HypothesisData::Sequential { signs, .. } = &cert.hypothesis else {
        panic!()
    };
    assert_eq!(signs.len(), 3);
    check_certificate(&g, &cert, f.tau);
}

#[test]
fn corrupted_certificate_is_caught() {
    let g = bundled("modular.grp");
    let run = theorem_a_pipeline(&g, &ball(&g, 3), 0).unwrap();
    let mut cert = run.certificate.clone();
    cert.generators[0] = g.parse_word("a").unwrap();
    let f = verify_freeness(&g, &cert, 6);
    assert!(!f.ok);
    assert_eq!(f.witness.as_deref(), Some("g1*g1"));
    assert!(!verify_pingpong(&g, &cert, 20, 100, 1).ok);
    assert!(recheck_hypothesis(&g, &cert).is_err());
}

#[test]
fn pipeline_on_modular_ball() {
    let g = bundled("modular.grp");
    let s = ball(&g, 4);
    let run = theorem_a_pipeline(&g, &s, 0).unwrap();
    let c = &run.certificate;
    assert!(c.rank >= rank_bound(c.source_size));
    assert!(c.max_s_length <= 240);
    assert_eq!(run.length_bound, 240);
    check_certificate(&g, c, run.tau);
}

#[test]
fn free_basis_certificates() {
    for (name, r) in [("f2.grp", 2), ("f3.grp", 3)] {
        let g = bundled(name);
        let s = SymSet::new(&g, &g.generator_elements()).unwrap();
        let c = free_basis_certificate(&g, &s).unwrap();
        assert_eq!(
            (c.rank, c.max_s_length, c.lemma),
            (r, 1, LemmaKind::FreeBasis)
        );
        assert!(verify_freeness(&g, &c, 6).ok);
        let vp = verify_pingpong(&g, &c, 8, 400, 3);
        assert!(vp.ok, "{:?}", vp.witness);
        recheck_hypothesis(&g, &c).unwrap();
    }
    let m = bundled("modular.grp");
    let s = SymSet::new(&m, &m.generator_elements()).unwrap();
    assert!(free_basis_certificate(&m, &s).is_err());
}

/// Random generating sets: the group generators plus a few random elements of the 2-ball.
#[test]
fn pipeline_certificates_verify_for_random_seeds() {
    for seed in 0..100u64 {
        let (name, k) = ACYLINDRICAL[seed as usize % ACYLINDRICAL.len()];
        let g = bundled(name);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = g.generator_elements();
        let pool = ball(&g, 2);
        let extra = rng.gen_range(1..=4);
        s.extend(pool.choose_multiple(&mut rng, extra).cloned());
        let run =
            theorem_a_pipeline(&g, &s, k).unwrap_or_else(|e| panic!("{name} seed {seed}: {e}"));
        let c = &run.certificate;
        assert!(c.rank >= run.rank_bound);
        assert!(c.max_s_length <= run.length_bound);
        let f = verify_freeness(&g, c, 6);
        assert!(f.ok, "{name} seed {seed}: {:?}", f.witness);
        let p = verify_pingpong(&g, c, 2 * (4 * run.tau + 2), 200, seed);
        assert!(p.ok, "{name} seed {seed}: {:?}", p.witness);
        recheck_hypothesis(&g, c).unwrap();
        if let Some(graph) = &run.nerve {
            let shape = tree_shape(&graph.adjacency()).unwrap();
            assert!(shape.leaves * shape.diameter >= 2 * (shape.vertices - 1));
        }
    }
}

#[test]
fn tree_lemma_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tested = 0;
    while tested < 1000 {
        let n = rng.gen_range(1..=200);
        let mut adj = vec![Vec::new(); n];
        for v in 1..n {
            let p = rng.gen_range(0..v);
            adj[v].push(p);
            adj[p].push(v);
        }
        let shape = tree_shape(&adj).unwrap();
        if shape.diameter % 2 == 1 {
            continue;
        }
        tested += 1;
        assert!(shape.leaves * shape.diameter >= 2 * (n - 1), "n={n}");
    }
}
