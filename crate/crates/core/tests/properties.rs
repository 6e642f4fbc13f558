use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use holorec::arith::{UniPoly, Var};
use holorec::expr::{parse, RadicalExpr};
use holorec::holonomic::Recurrence;
use holorec::ore::{ore_apply, ore_divrem, ore_mul, ore_to_recurrence, parse_recurrence, recurrence_to_ore, ShiftOperator};
use holorec::proof::{prove_equivalence, ProveOptions, Verdict};
use holorec::sequence::{SequenceTerms, TermOrigin};
use holorec::series::TruncSeries;

fn int_poly(var: Var, coeffs: &[i64]) -> UniPoly {
    UniPoly::new(var, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
}

fn poly(max_degree: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_degree + 1)
}

fn operator(max_order: usize, max_degree: usize) -> impl Strategy<Value = ShiftOperator> {
    prop::collection::vec(poly(max_degree), 1..=max_order + 1)
        .prop_map(|rows| ShiftOperator::from_polys(rows.iter().map(|r| int_poly(Var::N, r)).collect()))
}

fn nonzero_operator(max_order: usize, max_degree: usize) -> impl Strategy<Value = ShiftOperator> {
    operator(max_order, max_degree).prop_filter("nonzero", |op| !op.is_zero())
}

fn catalan_terms(count: usize) -> SequenceTerms {
    let mut values = vec![BigInt::one()];
    for n in 1..count as u64 {
        let next = values.last().unwrap() * (4 * n - 2) / (n + 1);
        values.push(next);
    }
    SequenceTerms::new(0, values.into_iter().map(BigRational::from_integer).collect(), TermOrigin::User)
}

fn catalan_rec() -> Recurrence {
    parse_recurrence("(n+1)*a(n) - (4*n-2)*a(n-1) = 0").unwrap()
}

fn radical_expr() -> impl Strategy<Value = RadicalExpr> {
    let leaf = prop_oneof![(0u32..20).prop_map(|v| RadicalExpr::Int(v.into())), Just(RadicalExpr::X)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e: RadicalExpr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |e| RadicalExpr::Neg(b(e))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| RadicalExpr::Add(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| RadicalExpr::Sub(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| RadicalExpr::Mul(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| RadicalExpr::Div(b(l), b(r))),
            (inner.clone(), 2u32..4).prop_map(move |(e, k)| RadicalExpr::Pow(b(e), k)),
            inner.clone().prop_map(move |e| RadicalExpr::Sqrt(b(e))),
            (inner, 3u32..5).prop_map(move |(e, k)| RadicalExpr::Root(b(e), k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ore_product_is_associative(a in operator(2, 2), b in operator(2, 2), c in operator(2, 2)) {
        prop_assert_eq!(ore_mul(&ore_mul(&a, &b), &c), ore_mul(&a, &ore_mul(&b, &c)));
    }

    #[test]
    fn ore_product_distributes(a in operator(2, 2), b in operator(2, 2), c in operator(2, 2)) {
        prop_assert_eq!(ore_mul(&a, &(&b + &c)), &ore_mul(&a, &b) + &ore_mul(&a, &c));
    }

    #[test]
    fn shift_commutes_past_coefficients(p in poly(3), k in 1usize..4) {
        let p = int_poly(Var::N, &p);
        let shifted = p.shift(k as i64);
        let lhs = ore_mul(&ShiftOperator::shift_power(k), &ShiftOperator::from_polys(vec![p]));
        let rhs = ShiftOperator::monomial(shifted.into(), k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_reconstructs(a in operator(4, 3), b in nonzero_operator(4, 3)) {
        let (q, r) = ore_divrem(&a, &b).unwrap();
        prop_assert_eq!(&ore_mul(&q, &b) + &r, a);
        if let Some(k) = r.order() {
            prop_assert!(k < b.order().unwrap());
        }
    }

    #[test]
    fn exact_multiples_divide_evenly(q in nonzero_operator(2, 2), b in nonzero_operator(2, 2)) {
        let (q2, r) = ore_divrem(&ore_mul(&q, &b), &b).unwrap();
        prop_assert!(r.is_zero());
        prop_assert_eq!(q2, q);
    }

    #[test]
    fn recurrence_operator_round_trip(rows in prop::collection::vec(poly(3), 1..5)) {
        let rows: Vec<UniPoly> = rows.iter().map(|r| int_poly(Var::N, r)).collect();
        prop_assume!(!rows[0].is_zero());
        let rec = Recurrence::new(rows).unwrap();
        prop_assert_eq!(ore_to_recurrence(&recurrence_to_ore(&rec)), Some(rec));
    }

    #[test]
    fn left_multiples_annihilate_and_prove(l in nonzero_operator(2, 2)) {
        let b = recurrence_to_ore(&catalan_rec());
        let lb = ore_mul(&l, &b);
        let terms = catalan_terms(60);
        for n in 0..20 {
            prop_assert!(ore_apply(&lb, &terms, n).unwrap().is_zero());
        }
        let derived = ore_to_recurrence(&lb).unwrap();
        let cert = prove_equivalence(&derived, &catalan_rec(), &mut terms.clone(), &ProveOptions::default()).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::Proved);
        prop_assert!(cert.invariant_holds());
    }

    #[test]
    fn reciprocal_series_inverts(p in poly(4), order in 1i64..30) {
        prop_assume!(p[0] != 0);
        let p = int_poly(Var::X, &p);
        let s = TruncSeries::from_poly(&p, order);
        let inv = TruncSeries::constant(BigRational::one(), order).div(&s).unwrap();
        prop_assert_eq!(inv.mul(&s), TruncSeries::constant(BigRational::one(), order));
    }

    #[test]
    fn roots_invert_powers(p in poly(3), k in 2u32..4, order in 1i64..25) {
        let mut p = p;
        p[0] = 1;
        let s = TruncSeries::from_poly(&int_poly(Var::X, &p), order);
        let root = s.nth_root(k).unwrap();
        prop_assert_eq!(root.pow(k), s.clone());
        prop_assert_eq!(root.coeff(0), BigRational::one());
    }

    #[test]
    fn series_products_commute(a in poly(4), b in poly(4), order in 0i64..20) {
        let a = TruncSeries::from_poly(&int_poly(Var::X, &a), order);
        let b = TruncSeries::from_poly(&int_poly(Var::X, &b), order);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn expressions_round_trip_through_display(e in radical_expr()) {
        let text = e.to_string();
        let parsed = parse(&text).unwrap();
        prop_assert_eq!(parsed.to_string(), text.clone());
        prop_assert_eq!(parse(&parsed.to_string()).unwrap(), parsed);
    }

    #[test]
    fn operators_round_trip_through_display(op in operator(3, 2)) {
        let text = op.to_string();
        prop_assert_eq!(holorec::ore::parse_operator(&text).unwrap(), op);
    }
}

#[test]
fn zero_operator_division_is_rejected() {
    assert!(ore_divrem(&ShiftOperator::one(), &ShiftOperator::zero()).is_err());
}
