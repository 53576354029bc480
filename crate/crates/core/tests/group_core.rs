use std::path::PathBuf;

use acyl::group::*;
use proptest::prelude::*;

fn bundled(name: &str) -> GraphOfGroups {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../groups")
        .join(name);
    load_group_file(&p).unwrap()
}

const ALL: [&str; 9] = [
    "modular.grp",
    "z2z2z3.grp",
    "f2.grp",
    "f3.grp",
    "hnn_z2.grp",
    "hnn_central.grp",
    "d4d4.grp",
    "s3s3.grp",
    "d4s3.grp",
];

fn alphabet(g: &GraphOfGroups) -> Vec<Letter> {
    let mut out = Vec::new();
    for (v, spec) in g.vertices().iter().enumerate() {
        for x in spec.group.elements(3) {
            if !spec.group.is_identity(x) {
                out.push(Letter::Elem { v: v as u8, x });
            }
        }
    }
    if g.kind() == Kind::Hnn {
        out.push(Letter::Stable(1));
        out.push(Letter::Stable(-1));
    }
    out
}

fn words(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..1000, 0..n)
}

fn pick(g: &GraphOfGroups, idx: &[usize]) -> Vec<Letter> {
    let a = alphabet(g);
    idx.iter().map(|&i| a[i % a.len()]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_a_homomorphism(gi in 0usize..9, u in words(14), v in words(14), w in words(8)) {
        let g = bundled(ALL[gi]);
        let (u, v, w) = (pick(&g, &u), pick(&g, &v), pick(&g, &w));
        let nu = g.reduce(&u).unwrap();
        let nv = g.reduce(&v).unwrap();
        let nw = g.reduce(&w).unwrap();
        let uv: Vec<Letter> = u.iter().chain(v.iter()).copied().collect();
        prop_assert_eq!(g.reduce(&uv).unwrap(), g.mul(&nu, &nv));
        // associativity
        prop_assert_eq!(g.mul(&g.mul(&nu, &nv), &nw), g.mul(&nu, &g.mul(&nv, &nw)));
        // inverses and identity
        prop_assert!(g.mul(&nu, &g.inverse(&nu)).is_identity());
        prop_assert!(g.mul(&g.inverse(&nu), &nu).is_identity());
        prop_assert_eq!(g.mul(&g.identity(), &nu), nu.clone());
        // normal forms are fixed points of reduction and survive formatting
        prop_assert_eq!(g.reduce(&g.letters(&nu)).unwrap(), nu.clone());
        prop_assert_eq!(g.parse_word(&g.format(&nu)).unwrap(), nu);
    }
}

#[test]
fn defining_relations_hold() {
    let g = bundled("modular.grp");
    assert!(g.parse_word("a^2").unwrap().is_identity());
    assert!(g.parse_word("b^3").unwrap().is_identity());
    assert!(!g.parse_word("a*b").unwrap().is_identity());

    let h = bundled("hnn_central.grp");
    // t^-1 u t = u, and v does not commute with t
    assert!(h.parse_word("t^-1*u*t*u").unwrap().is_identity());
    assert!(!h.parse_word("t^-1*v*t*v").unwrap().is_identity());

    let d = bundled("d4d4.grp");
    assert!(d.parse_word("s*p").unwrap().is_identity());
    assert!(!d.parse_word("r*q").unwrap().is_identity());
    assert_eq!(d.edge_group_order(), 2);
}

#[test]
fn hnn_normal_forms_use_both_transversals() {
    let text = "[group]\nkind = hnn\nvertex A = cyclic 4 x\nphi = x^2:x^2\n";
    let g = parse_group(text).unwrap();
    // t^-1 x^2 t = x^2, so x^2 t x^2 = t
    assert_eq!(
        g.parse_word("x^2*t*x^2").unwrap(),
        g.parse_word("t").unwrap()
    );
    let w = g.parse_word("x*t*x*t^-1*x").unwrap();
    assert_eq!(w.syllable_length(), 2);
    assert!(g.mul(&g.inverse(&w), &w).is_identity());
}

#[test]
fn stable_letter_is_rejected_outside_hnn() {
    let g = bundled("modular.grp");
    assert_eq!(
        g.reduce(&[Letter::Stable(1)]),
        Err(GroupError::StableLetterInNonHnn)
    );
}

#[test]
fn mixed_groups_are_detected() {
    let g = bundled("modular.grp");
    let h = bundled("f2.grp");
    let a = g.parse_word("a").unwrap();
    let x = h.parse_word("x").unwrap();
    assert_eq!(g.multiply(&a, &x), Err(GroupError::MixedGroups));
}

#[test]
fn modular_sphere_sizes_match_closed_form() {
    let g = bundled("modular.grp");
    let s = g.generator_elements();
    let ball = enumerate_ball(&g, &s, 12, &BallOptions { cap: 1_000_000 }).unwrap();
    let mut expected = vec![1usize];
    for n in 1..=12u32 {
        expected.push(expected.last().unwrap() + (1 << (n / 2)) + (1 << n.div_ceil(2)));
    }
    assert_eq!(ball.sizes(), expected);
}

#[test]
fn free_group_ball_sizes() {
    let g = bundled("f2.grp");
    let ball = enumerate_ball(
        &g,
        &g.generator_elements(),
        8,
        &BallOptions { cap: 1_000_000 },
    )
    .unwrap();
    let expected: Vec<usize> = (0..=8).map(|n| 2 * 3usize.pow(n) - 1).collect();
    assert_eq!(ball.sizes(), expected);
}

#[test]
fn trivial_group_balls_are_constant() {
    let g = parse_group("[group]\nkind = free_product\nvertex A = cyclic 1 e\n").unwrap();
    let ball = enumerate_ball(&g, &[g.identity()], 5, &BallOptions { cap: 10 }).unwrap();
    assert_eq!(ball.sizes(), vec![1; 6]);
}

#[test]
fn ball_cap_is_enforced() {
    let g = bundled("f2.grp");
    let r = enumerate_ball(&g, &g.generator_elements(), 10, &BallOptions { cap: 1000 });
    assert_eq!(r.unwrap_err(), GroupError::BallOverflow { cap: 1000 });
}

#[test]
fn non_triviality_flags() {
    assert!(bundled("modular.grp").non_triviality().non_elementary);
    assert!(bundled("s3s3.grp").non_triviality().non_elementary);
    assert!(bundled("hnn_z2.grp").non_triviality().non_elementary);
    let z2z2 =
        parse_group("[group]\nkind = free_product\nvertex A = cyclic 2 a\nvertex B = cyclic 2 b\n")
            .unwrap();
    assert!(!z2z2.non_triviality().non_elementary);
    let eq = parse_group(
        "[group]\nkind = amalgam\nvertex A = cyclic 4 a\nvertex B = cyclic 4 b\nedge = a^2:b^2\n",
    )
    .unwrap();
    let f = eq.non_triviality();
    assert!(f.proper && !f.index_condition);
}
