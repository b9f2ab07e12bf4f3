use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;

use hadamard_core::ratgf::hadamard_rational_detailed;
use hadamard_core::{
    expand_rational, hadamard_rational, hadamard_series, rgf_equal, Monomial, Polynomial, RationalGF, SeriesTrunc,
    XPoly,
};

fn small_poly() -> impl Strategy<Value = Polynomial> {
    vec((0u32..4, 0u32..4, -9i64..=9), 0..5)
        .prop_map(|ts| Polynomial::from_terms(ts.into_iter().map(|(a, b, c)| (Monomial::new(a, b), c))))
}

/// Coefficients around `2^80`, so every ring operation leaves 64-bit range.
fn big_poly() -> impl Strategy<Value = Polynomial> {
    vec((0u32..3, 0u32..3, any::<i64>(), any::<u64>()), 1..4).prop_map(|ts| {
        Polynomial::from_terms(
            ts.into_iter()
                .map(|(a, b, hi, lo)| (Monomial::new(a, b), (BigInt::from(hi) << 80) + BigInt::from(lo))),
        )
    })
}

fn any_poly() -> impl Strategy<Value = Polynomial> {
    prop_oneof![small_poly(), big_poly()]
}

/// Polynomials in `x` with small `Z[a, b]` coefficients.
fn xpoly(max_deg: usize) -> impl Strategy<Value = XPoly> {
    vec(small_poly(), 0..=max_deg + 1).prop_map(XPoly::new)
}

/// `num / den` with `den(0) = 1` and `1 <= deg den <= max_den`.
fn rgf(max_num: usize, max_den: usize) -> impl Strategy<Value = RationalGF> {
    (
        xpoly(max_num),
        vec(small_poly(), 1..=max_den),
        small_poly().prop_filter("nonzero", |p| !p.is_zero()),
    )
        .prop_map(|(num, mut tail, lead)| {
            let mut den = vec![Polynomial::one()];
            *tail.last_mut().unwrap() = lead;
            den.extend(tail);
            RationalGF::new(num, XPoly::new(den)).unwrap()
        })
}

fn series(order: usize) -> impl Strategy<Value = SeriesTrunc> {
    vec(small_poly(), order + 1).prop_map(|c| SeriesTrunc::from_coeffs(c).unwrap())
}

fn scale_series(s: &SeriesTrunc, c: &Polynomial) -> SeriesTrunc {
    SeriesTrunc::from_coeffs(s.coeffs().iter().map(|k| k * c).collect()).unwrap()
}

fn add_series(s: &SeriesTrunc, t: &SeriesTrunc) -> SeriesTrunc {
    SeriesTrunc::from_coeffs(s.coeffs().iter().zip(t.coeffs()).map(|(p, q)| p + q).collect()).unwrap()
}

proptest! {
    #[test]
    fn ring_laws(p in any_poly(), q in any_poly(), r in any_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
    }

    #[test]
    fn parse_inverts_render(p in any_poly()) {
        let text = p.to_string();
        let back: Polynomial = text.parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn xpoly_parse_inverts_render(p in xpoly(4)) {
        let back: XPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(p in any_poly(), q in any_poly(), x in -50i64..50, y in -50i64..50) {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        prop_assert_eq!((&p * &q).eval(&x, &y), p.eval(&x, &y) * q.eval(&x, &y));
        prop_assert_eq!((&p + &q).eval(&x, &y), p.eval(&x, &y) + q.eval(&x, &y));
    }

    #[test]
    fn hadamard_series_laws(s in series(8), t in series(8), u in series(8), c in small_poly()) {
        let st = hadamard_series(&s, &t).unwrap();
        prop_assert_eq!(&st, &hadamard_series(&t, &s).unwrap());
        prop_assert_eq!(
            hadamard_series(&st, &u).unwrap(),
            hadamard_series(&s, &hadamard_series(&t, &u).unwrap()).unwrap()
        );
        let lhs = hadamard_series(&add_series(&scale_series(&s, &c), &t), &u).unwrap();
        let rhs = add_series(&scale_series(&hadamard_series(&s, &u).unwrap(), &c), &hadamard_series(&t, &u).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn expansion_satisfies_the_defining_residue(r in rgf(3, 2), order in 0usize..=64) {
        let s = expand_rational(r.num(), r.den(), order).unwrap();
        let residue = &(r.den() * &s.to_xpoly()) - r.num();
        prop_assert!(residue.truncate(order + 1).is_zero());
    }

    #[test]
    fn expansion_respects_cauchy_product(r in rgf(2, 2), q in rgf(2, 2), order in 0usize..=16) {
        let lhs = r.mul(&q).expand(order);
        let rhs = r.expand(order).cauchy(&q.expand(order)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kronecker_product_matches_series(u in rgf(3, 2), v in rgf(2, 2)) {
        let h = hadamard_rational_detailed(&u, &v).unwrap();
        let du = u.den().degree().unwrap();
        let dv = v.den().degree().unwrap();
        prop_assert_eq!(h.dim, du * dv);
        let order = 2 * (h.dim + h.transient) + 4;
        prop_assert_eq!(h.result.expand(order), hadamard_series(&u.expand(order), &v.expand(order)).unwrap());
        prop_assert!(rgf_equal(&h.result, &hadamard_rational(&v, &u).unwrap()));
    }
}
