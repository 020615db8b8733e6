use planar_census::exact_math::{ExactRational, PowerSeries};
use planar_census::gf_census::*;
use planar_census::{FamilyId, StatKind};

const N: usize = 200;

fn r(n: i64, d: i64) -> ExactRational {
    ExactRational::from_ratio(n, d)
}

#[test]
fn sqrt_squares_back() {
    let inputs: [&[i64]; 4] = [&[1, -2, -3], &[1, -4], &[1, -6, 1], &[1, 3, -7, 2, 5]];
    for c in inputs {
        let s = PowerSeries::from_i64s(c, N);
        let root = s.sqrt_trunc(N).unwrap();
        assert_eq!(root.mul_trunc(&root, N).unwrap(), s, "{c:?}");
    }
}

#[test]
fn closed_form_matches_fixed_point() {
    for f in FamilyId::ALL {
        assert_eq!(counting_series(f, N).unwrap(), fixed_point_solve(f, N).unwrap(), "{f}");
    }
}

#[test]
fn multiplier_closed_form_matches_decomposition() {
    for f in FamilyId::ALL {
        assert_eq!(
            multiplier_gf(f, N).unwrap(),
            multiplier_from_decomposition(f, N).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn bivariate_marginal_is_counting_series() {
    for f in FamilyId::ALL {
        let nx = 30;
        // leaf-sized trees of size n have up to 2n-1 vertices
        let ny = 2 * nx;
        let b = bivariate_series(f, nx, ny).unwrap();
        assert_eq!(b.marginal(), counting_series(f, nx).unwrap(), "{f}");
    }
}

/// `(p - sqrt(d)) / q` with `p`, `d` polynomials and `q` a polynomial whose
/// constant term may vanish (one order is then lost).
fn quadratic_root(p: &[ExactRational], d: &[ExactRational], q: &[ExactRational], order: usize) -> PowerSeries {
    let n = order + 1;
    let ps = |c: &[ExactRational]| PowerSeries::from_coeffs(c.to_vec(), n);
    let num = &ps(p) - &ps(d).sqrt_trunc(n).unwrap();
    num.div_trunc(&ps(q), order).unwrap()
}

#[test]
fn bivariate_matches_closed_forms_at_sample_y() {
    let nx = 12;
    let ny = 2 * nx;
    for y in [r(2, 1), r(1, 2), r(-3, 5)] {
        let y2 = &y * &y;
        let one = ExactRational::one();
        let z = ExactRational::zero();
        // Motzkin: (1 - x - sqrt(1 - 2x + x^2 - 4x^2 y)) / (2x)
        let m = quadratic_root(
            &[one.clone(), -&one],
            &[one.clone(), r(-2, 1), &one - &(&y * &r(4, 1))],
            &[z.clone(), r(2, 1)],
            nx,
        );
        let b = bivariate_series(FamilyId::Motzkin, nx, ny).unwrap();
        assert_eq!(b.substitute_y(&y).truncate(nx - 1).unwrap(), m.truncate(nx - 1).unwrap());

        // Ordered: ((xy - x + 1) - sqrt(x^2y^2 - 2x^2y + x^2 - 2xy - 2x + 1)) / 2
        let t = quadratic_root(
            &[one.clone(), &y - &one],
            &[one.clone(), &(&y * &r(-2, 1)) - &r(2, 1), &(&y2 - &(&y * &r(2, 1))) + &one],
            &[r(2, 1)],
            nx,
        );
        let b = bivariate_series(FamilyId::Ordered, nx, ny).unwrap();
        assert_eq!(b.substitute_y(&y).truncate(nx - 1).unwrap(), t.truncate(nx - 1).unwrap());

        // full binary, y marking vertices: (1 - sqrt(1 - 4xy^2)) / (2y)
        let fb = quadratic_root(
            std::slice::from_ref(&one),
            &[one.clone(), &y2 * &r(-4, 1)],
            &[&y * &r(2, 1)],
            nx,
        );
        let b = bivariate_series(FamilyId::FullBinary, nx, ny).unwrap();
        assert_eq!(b.substitute_y(&y).truncate(nx - 1).unwrap(), fb.truncate(nx - 1).unwrap());

        // Schröder: (1 + xy - sqrt((xy)^2 + 2xy + 1 - 4xy(y+1))) / (2y + 2)
        let s = quadratic_root(
            &[one.clone(), y.clone()],
            &[one.clone(), &(&y * &r(2, 1)) - &(&(&y2 + &y) * &r(4, 1)), y2.clone()],
            &[&(&y * &r(2, 1)) + &r(2, 1)],
            nx,
        );
        let b = bivariate_series(FamilyId::Schroeder, nx, ny).unwrap();
        assert_eq!(b.substitute_y(&y).truncate(nx - 1).unwrap(), s.truncate(nx - 1).unwrap());
    }
}

#[test]
fn schroeder_leaf_total_is_x_times_multiplier() {
    let f = FamilyId::Schroeder;
    let l = multiplier_gf(f, N).unwrap().shift_up(1);
    for n in 1..=N {
        assert_eq!(
            l.coeff(n).to_integer().unwrap(),
            total_leaves(f, n).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn schroeder_vertex_total_routes_agree() {
    let f = FamilyId::Schroeder;
    // closed-form product, and the same built from the iterated equation
    let closed = counting_series(f, N)
        .unwrap()
        .mul_trunc(&multiplier_gf(f, N).unwrap(), N)
        .unwrap();
    let iterated = fixed_point_solve(f, N)
        .unwrap()
        .mul_trunc(&multiplier_from_decomposition(f, N).unwrap(), N)
        .unwrap();
    assert_eq!(closed, iterated);
    for n in 1..=N {
        assert_eq!(closed.coeff(n).to_integer().unwrap(), total_vertices(f, n).unwrap());
    }
    // y-derivative of the bivariate GF at y = 1
    let b = bivariate_series(f, 30, 60).unwrap();
    assert_eq!(b.y_moment(), closed.truncate(30).unwrap());
    let expect = [0, 1, 3, 14, 70, 363];
    for (n, &v) in expect.iter().enumerate() {
        assert_eq!(closed.coeff(n), &ExactRational::from(v));
    }
}

#[test]
fn total_leaves_from_bivariate_match_known_values() {
    // ordered trees: half the vertices are leaves, binom(2n-2, n-1) vertices in total
    for n in 2..=30 {
        let v = total_vertices(FamilyId::Ordered, n).unwrap();
        let l = total_leaves(FamilyId::Ordered, n).unwrap();
        assert_eq!(&l * 2, v, "n = {n}");
    }
    let b = bivariate_series(FamilyId::Motzkin, 20, 20).unwrap();
    for n in 1..=20 {
        assert_eq!(
            total_leaves(FamilyId::Motzkin, n).unwrap(),
            b.y_moment().coeff(n).to_integer().unwrap()
        );
    }
}

#[test]
fn fullbinary_statistics_coincide() {
    let f = FamilyId::FullBinary;
    for k in 1..=30 {
        assert_eq!(
            census_series(f, StatKind::VerticesInSubtree, 2 * k - 1, 60).unwrap(),
            census_series(f, StatKind::LeavesInSubtree, k, 60).unwrap(),
            "k = {k}"
        );
        assert!(census_series(f, StatKind::VerticesInSubtree, 2 * k, 60)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn census_sums_to_vertex_totals() {
    let n = 24;
    for f in FamilyId::ALL {
        for stat in StatKind::ALL {
            let mut sum = ExactRational::zero();
            for k in 1..=f.max_stat(stat, n) {
                sum += census_series(f, stat, k, n).unwrap().coeff(n);
            }
            assert_eq!(sum.to_integer().unwrap(), total_vertices(f, n).unwrap(), "{f} {stat}");
        }
    }
}

#[test]
fn root_gf_coefficients_match_bivariate() {
    for (f, stat) in [
        (FamilyId::Motzkin, StatKind::LeavesInSubtree),
        (FamilyId::Ordered, StatKind::LeavesInSubtree),
        (FamilyId::Schroeder, StatKind::VerticesInSubtree),
    ] {
        let b = bivariate_series(f, 40, 12).unwrap();
        for k in 1..=12 {
            let rk = root_stat_gf(f, stat, k).unwrap().to_series(40).unwrap();
            assert_eq!(rk, b.coeff_y(k).unwrap(), "{f} {stat} k = {k}");
        }
    }
}

#[test]
fn census_examples() {
    let c = census_series(FamilyId::Ordered, StatKind::VerticesInSubtree, 3, 3).unwrap();
    assert_eq!(c.coeff(3), &ExactRational::from(2));
    let m = multiplier_gf(FamilyId::FullBinary, 3).unwrap();
    let got: Vec<_> = (0..=3).map(|i| m.coeff(i).clone()).collect();
    assert_eq!(got, [1, 2, 6, 20].map(ExactRational::from));
}
