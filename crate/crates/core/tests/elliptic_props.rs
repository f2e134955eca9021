use proptest::prelude::*;

use zariski_core::algebra::{QPoly, Rat, RatFunc};
use zariski_core::data::SurfaceData;
use zariski_core::elliptic::{
    classify_fibers, enumerate_roots, gram_matrix, height, height_with, intersect_sections, intersect_with_zero, is_narrow,
    Section, WeierstrassModel,
};

fn surface() -> (SurfaceData, Vec<Section>, Vec<Section>) {
    let s = SurfaceData::bundled().unwrap();
    let basis = s.basis_sections();
    let narrow = s.narrow_sections().unwrap();
    (s, basis, narrow)
}

/// `y^2 = x^3 + t^2 x^2 + (t + 1) x`, with the 2-torsion section `(0, 0)`.
fn torsion_model() -> (WeierstrassModel, Section) {
    let m = WeierstrassModel::new(
        QPoly::from_ints(&[0, 0, 1]),
        QPoly::from_ints(&[1, 1]),
        QPoly::zero(),
        1,
    )
    .unwrap();
    (m, Section::new(RatFunc::zero(), RatFunc::zero()))
}

#[test]
fn euler_number() {
    let (s, _, _) = surface();
    for model in [s.model, torsion_model().0] {
        let fibers = classify_fibers(&model).unwrap();
        let total: i64 = fibers.iter().map(|f| f.ord_delta * f.place.degree() as i64).sum();
        assert_eq!(total, 12);
    }
}

#[test]
fn torsion_has_height_zero() {
    let (m, p) = torsion_model();
    assert!(m.contains(&p));
    assert_eq!(m.add(&p, &p).unwrap(), Section::Zero);
    assert_eq!(height(&m, &p, &p).unwrap(), Rat::zero());
}

#[test]
fn heights_are_bilinear() {
    let (s, basis, narrow) = surface();
    let fibers = classify_fibers(&s.model).unwrap();
    let all: Vec<Section> = basis.into_iter().chain(narrow).collect();
    let gram = gram_matrix(&s.model, &all).unwrap();
    for i in 0..all.len() {
        for j in i..all.len() {
            let sum = s.model.add(&all[i], &all[j]).unwrap();
            for (k, r) in all.iter().enumerate() {
                let h = height_with(&s.model, &fibers, &sum, r).unwrap();
                assert_eq!(h, &gram[i][k] + &gram[j][k], "s{i} + s{j} against {k}");
            }
        }
    }
}

#[test]
fn positivity_and_parity() {
    let (s, basis, narrow) = surface();
    for p in basis.iter().chain(&narrow) {
        assert!(height(&s.model, p, p).unwrap() > Rat::zero());
    }
    for p in &narrow {
        assert!(is_narrow(&s.model, p).unwrap());
        let h = height(&s.model, p, p).unwrap();
        assert!(h.is_integer() && h.to_i64().unwrap() % 2 == 0);
    }
}

#[test]
fn roots_meet_their_negatives_three_times() {
    let (s, _, narrow) = surface();
    let gram = gram_matrix(&s.model, &narrow).unwrap();
    let roots = enumerate_roots(&gram).unwrap();
    assert_eq!(roots.len(), 26);
    for r in roots.iter().filter(|r| r.iter().any(|&c| c > 0)) {
        let sec = s.model.combination(r, &narrow).unwrap();
        assert_eq!(intersect_sections(&s.model, &sec, &sec.neg()).unwrap(), 3, "{r:?}");
        assert_eq!(intersect_with_zero(&s.model, &sec).unwrap(), 0, "{r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn group_law(a in prop::collection::vec(-1i64..=1, 5), b in prop::collection::vec(-1i64..=1, 5), c in prop::collection::vec(-1i64..=1, 5)) {
        let (s, basis, _) = surface();
        let m = &s.model;
        let (p, q, r) = (
            m.combination(&a, &basis).unwrap(),
            m.combination(&b, &basis).unwrap(),
            m.combination(&c, &basis).unwrap(),
        );
        prop_assert_eq!(m.add(&p, &q).unwrap(), m.add(&q, &p).unwrap());
        let left = m.add(&m.add(&p, &q).unwrap(), &r).unwrap();
        let right = m.add(&p, &m.add(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn scalar_multiplication(n in -4i64..=4, i in 0usize..5) {
        let (s, basis, _) = surface();
        let m = &s.model;
        let p = if n < 0 { basis[i].neg() } else { basis[i].clone() };
        let mut acc = Section::Zero;
        for _ in 0..n.abs() {
            acc = m.add(&acc, &p).unwrap();
        }
        prop_assert_eq!(m.scalar_mul(n, &basis[i]).unwrap(), acc);
    }
}
