use acyl::group::{enumerate_ball, parse_group, BallOptions};
use acyl::orbifold::*;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn sig(text: &str) -> Signature {
    Signature::parse(text).unwrap()
}

/// Every signature with small genus, boundary count and cone orders.
fn small_signatures() -> Vec<Signature> {
    let mut out = Vec::new();
    let order_lists: Vec<Vec<u32>> = {
        let mut lists = vec![vec![]];
        for len in 1..=5 {
            let mut next = Vec::new();
            for l in lists.iter().filter(|l: &&Vec<u32>| l.len() == len - 1) {
                for p in [2, 3, 4, 7] {
                    if l.last().map_or(true, |&q| q <= p) {
                        let mut m = l.clone();
                        m.push(p);
                        next.push(m);
                    }
                }
            }
            lists.extend(next);
        }
        lists
    };
    for g in -4..=3 {
        for h in 0..=3 {
            for orders in &order_lists {
                out.push(Signature::new(g, h, orders.clone()).unwrap());
            }
        }
    }
    out
}

#[test]
fn triangular_example() {
    let s = sig("0,0;2,3,7");
    assert_eq!(format_rational(&euler_char(&s)), "-1/42");
    let c = classify(&s);
    assert_eq!((c.kind, c.triangular), (OrbifoldType::HyperbolicType, true));
    assert_eq!(splitting(&s), Err(OrbifoldError::TriangularOrbifold));
}

#[test]
fn four_cone_points_split_into_two_discs() {
    let s = sig("0,0;2,2,2,3");
    let split = splitting(&s).unwrap();
    assert_eq!(split.kind, SplitKind::Amalgam);
    assert_eq!(split.edge, EdgeGroup::Cyclic);
    assert_eq!(split.pieces, vec![sig("0,1;2,2"), sig("0,1;2,3")]);
    let total: BigRational = split.pieces.iter().map(euler_char).sum();
    assert_eq!(total, euler_char(&s));
    assert_eq!(format_rational(&total), "-1/6");
    assert!(!split.executable);
}

#[test]
fn boundary_gives_free_products() {
    let s = sig("0,1;2,3");
    let split = splitting(&s).unwrap();
    assert_eq!(
        (split.kind, split.edge, split.executable),
        (SplitKind::Amalgam, EdgeGroup::Trivial, true)
    );
    assert_eq!(split.pieces, vec![sig("0,1;2"), sig("0,1;3")]);
    // the emitted group file is the modular group
    let g = parse_group(split.group_file.as_deref().unwrap()).unwrap();
    let sizes = enumerate_ball(&g, &g.generator_elements(), 6, &BallOptions::default())
        .unwrap()
        .sizes();
    let modular =
        parse_group("[group]\nkind = free_product\nvertex A = cyclic 2 a\nvertex B = cyclic 3 b\n")
            .unwrap();
    let expected = enumerate_ball(
        &modular,
        &modular.generator_elements(),
        6,
        &BallOptions::default(),
    )
    .unwrap()
    .sizes();
    assert_eq!(sizes, expected);
}

#[test]
fn splittings_glue_back_for_all_small_signatures() {
    let mut split_count = 0;
    for s in small_signatures() {
        let class = classify(&s);
        let Ok(split) = splitting(&s) else {
            assert!(
                class.kind != OrbifoldType::HyperbolicType || class.triangular,
                "{s}"
            );
            continue;
        };
        split_count += 1;
        assert_eq!(split.glued_euler_char(), euler_char(&s), "{s}");
        // the edge group is proper on both sides: no piece is a disc without cone points
        assert!(split.pieces.iter().all(|p| *p != sig("0,1")), "{s}");
        match split.edge {
            EdgeGroup::Cyclic => {
                assert!(
                    split.pieces.iter().any(|p| euler_char(p).is_negative()),
                    "{s}"
                );
                assert_eq!(split.acylindricity, 2);
            }
            EdgeGroup::Trivial => assert!(s.h > 0),
        }
        if split.kind == SplitKind::Hnn {
            assert_eq!(euler_char(&split.pieces[0]), euler_char(&s));
        }
        let (whole, glued) = splitting_consistency(&s, &split);
        assert_eq!(whole, glued, "{s}");
    }
    assert!(split_count > 500);
}

#[test]
fn abelian_rank_matches_signature() {
    for s in small_signatures() {
        assert_eq!(
            presentation(&s).abelian_invariants().free_rank,
            abelian_rank_from_signature(&s),
            "{s}"
        );
    }
    let inv = presentation(&sig("0,0;2,3,7")).abelian_invariants();
    assert_eq!((inv.free_rank, inv.torsion.len()), (0, 0));
    assert_eq!(
        presentation(&sig("0,0;2,4,6")).abelian_invariants().torsion,
        vec![2, 2]
    );
}

#[test]
fn disc_with_one_cone_point_is_cyclic() {
    for p in 2..9 {
        let pres = presentation(&Signature::new(0, 1, vec![p]).unwrap());
        let table = pres.enumerate_cosets(1000).unwrap();
        assert_eq!(table.index(), p as usize);
    }
    assert!(euler_char(&sig("0,2")).is_zero());
}
