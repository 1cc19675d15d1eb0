use ajf_core::analytic::{ajf_derivative, chebyshev_grid};
use ajf_core::indices::{from_classical, kets_up_to, to_classical};
use ajf_core::operators::{apply, apply_word, casimir_su22, ladder_coefficient, Generator};
use ajf_core::quadrature::{expand, gauss_legendre, parseval_check};
use ajf_core::{ajf, EvalPoint, HalfInt, IndexTriple, StateVector};
use approx::assert_relative_eq;
use proptest::prelude::*;

fn binomial(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// 𝒥 straight from its definition, without any symmetry reduction:
/// the Jacobi part is the finite sum
/// Σ_s C(n+α, n-s) C(n+β, s) ((x-1)/2)^s ((x+1)/2)^(n-s),
/// where n+α = l+q and n+β = l-q stay nonnegative for every valid triple.
fn oracle(t: IndexTriple, x: f64) -> f64 {
    let (l2, m2, q2) = (t.l.twice(), t.m.twice(), t.q.twice());
    let n = (l2 - m2) / 2;
    let (lpq, lmq) = ((l2 + q2) / 2, (l2 - q2) / 2);
    let (lpm, lmm) = ((l2 + m2) / 2, (l2 - m2) / 2);
    let norm = (factorial(lpm) * factorial(lmm) / (factorial(lpq) * factorial(lmq))).sqrt() * 2f64.powf(-t.m.to_f64());
    let weight = (1.0 - x).powf((t.m + t.q).to_f64() / 2.0) * (1.0 + x).powf((t.m - t.q).to_f64() / 2.0);
    let poly: f64 = (0..=n)
        .map(|s| {
            binomial(lpq, n - s)
                * binomial(lmq, s)
                * ((x - 1.0) / 2.0).powi(s as i32)
                * ((x + 1.0) / 2.0).powi((n - s) as i32)
        })
        .sum();
    norm * weight * poly
}

#[test]
fn evaluation_matches_definition_on_every_small_triple() {
    let grid: Vec<f64> = chebyshev_grid(20).iter().map(|x| x.value()).collect();
    for t in kets_up_to(10) {
        let scale = grid.iter().map(|x| oracle(t, *x).abs()).fold(0.0, f64::max);
        for x in &grid {
            let got = ajf(t, *x).unwrap();
            let want = oracle(t, *x);
            assert!((got - want).abs() <= 1e-12 * scale, "{t} at {x}: {got} vs {want}");
        }
    }
}

#[test]
fn frozen_values() {
    let t = IndexTriple::from_twice;
    // P_1(x) = x
    assert_relative_eq!(ajf(t(2, 0, 0), 0.5).unwrap(), 0.5, max_relative = 1e-15);
    // sqrt((1 - x^2)/2)
    assert_relative_eq!(ajf(t(2, 2, 0), 0.0).unwrap(), 0.5f64.sqrt(), max_relative = 1e-15);
    assert_relative_eq!(ajf(t(2, -2, 0), 0.0).unwrap(), -(0.5f64.sqrt()), max_relative = 1e-15);
    assert_relative_eq!(ajf(t(2, 2, 0), 0.5).unwrap(), 0.6123724356957946, max_relative = 1e-15);
    assert_eq!(ajf(t(0, 0, 0), 0.9).unwrap(), 1.0);
}

#[test]
fn parity_when_q_vanishes() {
    // 𝒥_l^{m,0}(-x) = (-1)^(l-m) 𝒥_l^{m,0}(x), and likewise with m and q exchanged
    for t in kets_up_to(10).into_iter().filter(|t| t.q == HalfInt::ZERO) {
        let sign = if (t.l - t.m).to_integer().unwrap() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let swapped = IndexTriple::new(t.l, t.q, t.m);
        for x in chebyshev_grid(20) {
            let b = sign * ajf(t, x.value()).unwrap();
            assert!(
                (ajf(t, -x.value()).unwrap() - b).abs() <= 1e-13 * (1.0 + b.abs()),
                "{t}"
            );
            assert!(
                (ajf(swapped, -x.value()).unwrap() - b).abs() <= 1e-13 * (1.0 + b.abs()),
                "{swapped}"
            );
        }
    }
}

#[test]
fn no_parity_on_the_diagonal() {
    // 𝒥_1^{1,1}(x) = (1 - x)/2 has no definite parity
    let t = IndexTriple::from_twice(2, 2, 2);
    assert_relative_eq!(ajf(t, 0.5).unwrap(), 0.25, max_relative = 1e-15);
    assert_relative_eq!(ajf(t, -0.5).unwrap(), 0.75, max_relative = 1e-15);
}

fn valid_triple(l2_max: i64) -> impl Strategy<Value = IndexTriple> {
    (0..=l2_max)
        .prop_flat_map(|l2| (Just(l2), 0..=l2, 0..=l2))
        .prop_map(|(l2, a, b)| IndexTriple::from_twice(l2, l2 - 2 * a, l2 - 2 * b))
}

fn ladder() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ladders().collect::<Vec<_>>())
}

proptest! {
    #[test]
    fn symmetries_match_definition(t in valid_triple(10), x in -0.95f64..0.95) {
        let scale = chebyshev_grid(20).iter().map(|p| oracle(t, p.value()).abs()).fold(0.0, f64::max);
        let (l, m, q) = (t.l, t.m, t.q);
        let sign = |k: HalfInt| if k.to_integer().unwrap().rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let here = oracle(t, x);
        let images = [
            (IndexTriple::new(l, q, m), x, 1.0),
            (IndexTriple::new(l, -m, -q), x, sign(m + q)),
            (IndexTriple::new(l, -m, q), -x, sign(l - q)),
            (IndexTriple::new(l, m, -q), -x, sign(l - m)),
        ];
        for (image, y, s) in images {
            prop_assert!((here - s * ajf(image, y).unwrap()).abs() <= 1e-12 * scale.max(here.abs()));
        }
    }

    #[test]
    fn classical_round_trip(t in valid_triple(16)) {
        if let Ok(c) = to_classical(t) {
            prop_assert_eq!(from_classical(c).unwrap(), t);
        }
    }

    #[test]
    fn ladder_then_adjoint_returns_squared_coefficient(t in valid_triple(12), g in ladder()) {
        let a = ladder_coefficient(g, t).unwrap();
        let s = StateVector::basis(t).unwrap();
        let back = apply_word(&[g.adjoint(), g], &s);
        let c2 = a.coefficient * a.coefficient;
        prop_assert!(back.max_abs_diff(&s.scaled(c2)) <= 1e-12 * (1.0 + c2));
    }

    #[test]
    fn ladder_shifts_cartan_eigenvalues(t in valid_triple(10), g in ladder()) {
        let a = ladder_coefficient(g, t).unwrap();
        prop_assume!(a.coefficient != 0.0);
        let s = StateVector::basis(t).unwrap();
        for d in [Generator::L, Generator::M, Generator::Q] {
            // [D, X] = shift * X on a basis ket
            let lhs = apply(d, &apply(g, &s)).minus(&apply(g, &apply(d, &s)));
            let shift = match d {
                Generator::L => a.target.l - t.l,
                Generator::M => a.target.m - t.m,
                _ => a.target.q - t.q,
            };
            prop_assert!(lhs.max_abs_diff(&apply(g, &s).scaled(shift.to_f64())) <= 1e-12);
        }
    }

    #[test]
    fn casimir_on_random_superpositions(coeffs in prop::collection::vec(-1.0f64..1.0, 16)) {
        // the l = 3/2 multiplet
        let kets: Vec<IndexTriple> = kets_up_to(3).into_iter().filter(|k| k.l.twice() == 3).collect();
        let s: StateVector = kets.iter().copied().zip(coeffs).collect();
        prop_assume!(s.norm() > 1e-6);
        let s = s.scaled(1.0 / s.norm());
        prop_assert!(casimir_su22(&s).max_abs_diff(&s.scaled(-1.5)) <= 1e-11);
    }

    #[test]
    fn derivative_matches_finite_difference(t in valid_triple(8), x in -0.9f64..0.9) {
        let h = 1e-5;
        let fd = (ajf(t, x + h).unwrap() - ajf(t, x - h).unwrap()) / (2.0 * h);
        let d = ajf_derivative(t, EvalPoint::new(x).unwrap()).unwrap();
        prop_assert!((d - fd).abs() <= 5e-8, "{} vs {}", d, fd);
    }

    #[test]
    fn truncation_tail_shrinks(l2 in 0i64..24, a in -0.9f64..0.9) {
        let rule = gauss_legendre(48).unwrap();
        let f = move |x: f64| (a * x).exp() * (1.0 - x * x).sqrt();
        let m = HalfInt::from_twice(2);
        let short = parseval_check(f, m, HalfInt::ZERO, HalfInt::from_twice(l2 + 2), &rule).unwrap();
        let long = parseval_check(f, m, HalfInt::ZERO, HalfInt::from_twice(l2 + 4), &rule).unwrap();
        prop_assert!(long.tail <= short.tail + 1e-14);
        prop_assert!(long.tail >= -1e-12);
    }

    #[test]
    fn expansion_is_linear(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let rule = gauss_legendre(32).unwrap();
        let (m, q) = (HalfInt::from_twice(1), HalfInt::from_twice(-1));
        let l_max = HalfInt::from_twice(9);
        let f = |x: f64| x.exp() * (1.0 - x * x).sqrt();
        let g = |x: f64| x.cos() * (1.0 - x * x).sqrt();
        let cf = expand(f, m, q, l_max, &rule).unwrap();
        let cg = expand(g, m, q, l_max, &rule).unwrap();
        let cs = expand(|x| a * f(x) + b * g(x), m, q, l_max, &rule).unwrap();
        for ((l, s), ((_, u), (_, v))) in cs.coefficients.iter().zip(cf.coefficients.iter().zip(&cg.coefficients)) {
            prop_assert!((s - (a * u + b * v)).abs() <= 1e-13, "l = {}", l);
        }
    }
}
