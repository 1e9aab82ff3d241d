mod common;

use common::*;
use hilbert_lab::algebra::{RingPresentation, Workbench};
use hilbert_lab::campaign::closure_report;
use hilbert_lab::determinantal::{straighten, verify_split_powers, Entry, Shape};
use hilbert_lab::hilbert::{coefficients_from_h, hilbert_datum, table_from_h};
use proptest::prelude::*;

fn monomial_ideal(vars: usize, max_deg: u16) -> impl Strategy<Value = Vec<Vec<u16>>> {
    let pure = proptest::collection::vec(1..=max_deg, vars);
    let extra = proptest::collection::vec(proptest::collection::vec(0..max_deg, vars), 0..=vars + 1);
    (pure, extra).prop_map(move |(pure, extra)| {
        let mut gens: Vec<Vec<u16>> = pure
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut e = vec![0; vars];
                e[i] = a;
                e
            })
            .collect();
        gens.extend(extra.into_iter().filter(|e| e.iter().any(|&x| x > 0)));
        gens
    })
}

fn two_or_three() -> impl Strategy<Value = (usize, Vec<Vec<u16>>)> {
    (2usize..=3).prop_flat_map(|v| (Just(v), monomial_ideal(v, 4)))
}

fn parse(vars: usize, gens: &[Vec<u16>]) -> RingPresentation {
    RingPresentation::parse(&presentation_text(vars, gens)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fit_recovers_coefficients(d in 1usize..=3, h in proptest::collection::vec(0i64..5, 0..4), h0 in 1i64..4) {
        let mut h = h;
        h.insert(0, h0);
        let start = h.len() - 1;
        let table: Vec<usize> = table_from_h(&h, d, start + 2 * d + 3).iter().map(|&x| x as usize).collect();
        let datum = hilbert_datum(table, d, start).unwrap();
        prop_assert_eq!(&datum.coefficients, &coefficients_from_h(&h, d));
        let sum: i64 = datum.h_vector.unwrap().iter().sum();
        prop_assert_eq!(sum, datum.coefficients[0]);
    }

    #[test]
    fn deeper_truncation_changes_nothing((vars, gens) in two_or_three(), extra in 0usize..3) {
        let pres = parse(vars, &gens);
        let polys = pres.ideal_polynomials().unwrap();
        let mut wb = Workbench::new(&pres, 8, 64).unwrap();
        let i = wb.ideal(&polys).unwrap();
        let i2 = wb.power(&i, 2).unwrap();
        let n = wb.host().order() + extra;
        let mut deep = Workbench::new(&pres, n + 2, 64).unwrap();
        let j = deep.ideal(&polys).unwrap();
        let j2 = deep.power(&j, 2).unwrap();
        prop_assert_eq!(i.colength().unwrap().value, j.colength().unwrap().value);
        prop_assert_eq!(i2.colength().unwrap().value, j2.colength().unwrap().value);
    }

    #[test]
    fn products_associate(a in monomial_ideal(2, 3), b in monomial_ideal(2, 3), c in 1u32..4, k in 1u32..100) {
        let pres = parse(2, &a);
        let mut wb = Workbench::new(&pres, 8, 64).unwrap();
        let i = wb.ideal(&pres.ideal_polynomials().unwrap()).unwrap();
        let jp = parse(2, &b);
        let j = wb.ideal(&jp.ideal_polynomials().unwrap()).unwrap();
        // a non-monomial third factor
        let kp = RingPresentation::parse(&format!("vars: x, y\ndim: 2\nideal: x^{c} + {k}*y, y^2\n")).unwrap();
        let kk = wb.ideal(&kp.ideal_polynomials().unwrap()).unwrap();
        let ij = wb.product(&i, &j).unwrap();
        let left = wb.product(&ij, &kk).unwrap();
        let jk = wb.product(&j, &kk).unwrap();
        let right = wb.product(&i, &jk).unwrap();
        prop_assert!(wb.equals(&left, &right).unwrap());
        let ji = wb.product(&j, &i).unwrap();
        prop_assert!(wb.equals(&ij, &ji).unwrap());
    }

    #[test]
    fn closure_is_idempotent((vars, gens) in two_or_three()) {
        let first = closure_report(&parse(vars, &gens), 64).unwrap();
        prop_assert!(first.closure_colength <= first.colength);
        prop_assert_eq!(first.closed, first.closure_colength == first.colength);
        let text = format!(
            "vars: {}\ndim: {vars}\nideal: {}\n",
            first.variables.join(", "),
            first.closure_generators.join(", ")
        );
        let second = closure_report(&RingPresentation::parse(&text).unwrap(), 64).unwrap();
        prop_assert!(second.closed);
        prop_assert_eq!(&second.generators, &first.closure_generators);
    }

    #[test]
    fn lp_agrees_with_power_oracle((vars, gens) in two_or_three(), point in proptest::collection::vec(0u16..5, 3)) {
        let point = &point[..vars];
        prop_assert_eq!(lp_member(point, &gens), power_member(point, &gens, 6));
    }

    #[test]
    fn colength_is_the_staircase((vars, gens) in two_or_three()) {
        prop_assert_eq!(engine_colength(vars, &gens), staircase_colength(&gens));
    }

    #[test]
    fn straightening_ignores_factor_order(
        shape in prop_oneof![Just((2usize, 2usize)), Just((2, 3)), Just((2, 4)), Just((3, 3))],
        picks in proptest::collection::vec(0usize..100, 3),
        rotation in 0usize..3,
    ) {
        let shape = Shape::new(shape.0, shape.1).unwrap();
        let all: Vec<Entry> = shape.entries().collect();
        let factors: Vec<Entry> = picks[..shape.s].iter().map(|&k| all[k % all.len()]).collect();
        let mut permuted = factors.clone();
        permuted.rotate_left(rotation % shape.s);
        permuted.reverse();
        let a = straighten(shape, &factors).unwrap();
        let b = straighten(shape, &permuted).unwrap();
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.standard_indices, b.standard_indices);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn split_powers_hold(x in 1usize..=2, y in 1usize..=2, i in 1usize..=2, j in 1usize..=2) {
        let entries = verify_split_powers(x, y, i, j).unwrap();
        prop_assert!(entries.iter().all(|e| e.holds), "{:?}", entries);
    }
}
