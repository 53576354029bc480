use acyl::census::*;
use acyl::group::*;

fn significant_digits_agree(got: f64, want: f64) -> bool {
    (got - want).abs() <= 1e-12 * want.abs()
}

#[test]
fn bounds_match_high_precision_reference() {
    let data = include_str!("data/census_reference.txt");
    let mut checked = 0;
    for line in data.lines().filter(|l| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let want: f64 = f[3].parse().unwrap();
        let got = match f[0] {
            "max_gens" => max_generating_size(f[1].parse().unwrap(), f[2].parse().unwrap()),
            "max_gens_alt" => {
                max_generating_size_alternative(f[1].parse().unwrap(), f[2].parse().unwrap())
            }
            "pres_count" => presentation_count_bound(f[1].parse().unwrap(), f[2].parse().unwrap()),
            "three_mfd" => three_manifold_bound(f[1].parse().unwrap(), f[2].parse().unwrap()),
            other => panic!("unknown entry {other}"),
        };
        assert!(
            significant_digits_agree(got.log_value, want),
            "{line}: got {}",
            got.log_value
        );
        checked += 1;
    }
    assert_eq!(checked, 75);
}

#[test]
fn bounds_are_monotone() {
    let mut last = 0.0;
    for i in 1..100 {
        let b = max_generating_size(0, i as f64 * 0.05).log_value;
        assert!(b >= last);
        last = b;
    }
    assert!(max_generating_size(3, 0.2).log_value > max_generating_size(2, 0.2).log_value);
}

#[test]
fn surgery() {
    assert_eq!(surgery_bounds(1), (2, 3));
    for n in 1..20 {
        for k in 0..=n {
            let (m, r) = surgery_bounds_split(n - k, k);
            assert!(m <= 2 * n && r <= 3 * n);
        }
    }
}

fn cyclic(n: u32) -> GraphOfGroups {
    parse_group(&format!(
        "[group]\nkind = free_product\nvertex B = cyclic {n} b\n"
    ))
    .unwrap()
}

#[test]
fn triangular_presentation_of_z3() {
    let g = cyclic(3);
    let b = g.parse_word("b").unwrap();
    let s = vec![b.clone(), g.inverse(&b)];
    let tp = triangular_presentation(&g, &s, 1, &BallOptions::default()).unwrap();
    assert_eq!(tp.presentation.generators.len(), 3);
    assert!(
        tp.presentation
            .formatted_relators()
            .contains(&"x[b]^2*x[b^-1]^-1".to_string())
            || tp
                .presentation
                .formatted_relators()
                .contains(&"x[b]^2*x[b^2]^-1".to_string())
    );
    let cmp = tp.compare_balls(&g, &s, 3, 10_000).unwrap();
    assert_eq!(cmp.original, vec![1, 3, 3, 3]);
    assert!(cmp.matches());
    assert_eq!(cmp.order, 3);
}

#[test]
fn triangular_presentations_of_finite_cyclic_groups() {
    for n in [2, 5, 7, 12] {
        let g = cyclic(n);
        let s = g.generator_elements();
        // a ball covering the whole group carries its multiplication table
        let m = (n as usize) / 2;
        let tp = triangular_presentation(&g, &s, m, &BallOptions::default()).unwrap();
        assert!(tp.presentation.relators.iter().all(|r| r.len() <= 3));
        let cmp = tp.compare_balls(&g, &s, 4, 10_000).unwrap();
        assert!(cmp.matches(), "Z/{n}, M = {m}: {cmp:?}");
        assert_eq!(cmp.order, n as usize);
    }
    // too small a ball only sees x_b x_(b^-1) = 1 and presents Z
    let g = cyclic(12);
    let tp =
        triangular_presentation(&g, &g.generator_elements(), 1, &BallOptions::default()).unwrap();
    assert_eq!(tp.presentation.abelian_invariants().free_rank, 1);
    assert!(tp
        .compare_balls(&g, &g.generator_elements(), 4, 500)
        .is_err());
}

#[test]
fn trivial_group() {
    let g = cyclic(3);
    let tp = triangular_presentation(&g, &[], 2, &BallOptions::default()).unwrap();
    assert_eq!(tp.presentation.generators.len(), 1);
    assert_eq!(tp.presentation.relators.len(), 1);
    assert_eq!(tp.compare_balls(&g, &[], 3, 100).unwrap().order, 1);
}

#[test]
fn modular_relator_count_is_the_composable_pairs() {
    let g =
        parse_group("[group]\nkind = free_product\nvertex A = cyclic 2 a\nvertex B = cyclic 3 b\n")
            .unwrap();
    let s = g.generator_elements();
    let tp = triangular_presentation(&g, &s, 2, &BallOptions::default()).unwrap();
    let ball = tp.elements.clone();
    let mut pairs = 0;
    for x in &ball {
        for y in &ball {
            if ball.contains(&g.mul(x, y)) {
                pairs += 1;
            }
        }
    }
    assert_eq!(tp.presentation.relators.len(), pairs);
    assert_eq!(ball.len(), 1 + 3 + 4);
}
