use proptest::prelude::*;

use zariski_core::algebra::linalg::det;
use zariski_core::algebra::{Field, Poly, Rat};
use zariski_core::config::CurveConfiguration;
use zariski_core::data::data_dir;
use zariski_core::geometry::{
    conic_is_smooth, curve_through_points, intersection_cycle, verify_configuration, FamilyData, GeometryError,
    PointOrbit,
};

fn vars() -> Vec<String> {
    ["x", "y", "z"].map(String::from).to_vec()
}

/// Exponents of the ternary forms of degree `d`.
fn exponents(d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|a| (0..=d - a).map(move |b| vec![a, b, d - a - b])).collect()
}

fn form(d: u32) -> impl Strategy<Value = Poly> {
    let n = exponents(d).len();
    prop::collection::vec(-5i64..=5, n).prop_map(move |c| {
        let terms = exponents(d).into_iter().zip(c).map(|(e, c)| (e, Rat::from_int(c)));
        Poly::from_terms(&vars(), terms).unwrap()
    })
}

fn rational() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

fn invertible() -> impl Strategy<Value = [[Rat; 3]; 3]> {
    prop::collection::vec(-4i64..=4, 9)
        .prop_map(|v| std::array::from_fn(|i| std::array::from_fn(|j| Rat::from_int(v[3 * i + j]))))
        .prop_filter("invertible", |m: &[[Rat; 3]; 3]| {
            !det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).is_zero()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bezout(f in form(2), g in form(2), h in form(1), seed in 0u64..1000) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        for (a, b, n) in [(&f, &g, 4), (&f, &h, 2)] {
            match intersection_cycle(a, b, seed) {
                Ok(c) => prop_assert_eq!(c.total(), n),
                Err(GeometryError::CommonComponent) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn conic_fitting_is_projectively_invariant(
        pts in prop::collection::vec((rational(), rational()), 3..8),
        on_parabola in any::<bool>(),
        c in rational(),
        m in invertible(),
    ) {
        let orbits: Vec<PointOrbit> = pts
            .iter()
            .map(|(x, y)| {
                let y = if on_parabola { x * x - &c } else { y.clone() };
                PointOrbit::affine(x.clone(), y)
            })
            .collect();
        let moved: Vec<PointOrbit> = orbits.iter().map(|p| p.transform(&m)).collect();
        let before = curve_through_points(2, &orbits, &vars()).exists;
        prop_assert_eq!(before, curve_through_points(2, &moved, &vars()).exists);
        if on_parabola {
            prop_assert!(before);
        }
    }

    #[test]
    fn family_members_are_tangent(i in 0usize..5, a in rational()) {
        let fam = FamilyData::bundled().unwrap();
        let name = fam.families[i].name.clone();
        let c = fam.family_instance(&name, &a).unwrap();
        prop_assert!(conic_is_smooth(&c));
        let cyc = intersection_cycle(&fam.quartic, &c, 7).unwrap();
        prop_assert_eq!(cyc.total(), 8);
        for p in &cyc.points {
            prop_assert_eq!(p.multiplicity % 2, 0);
            prop_assert!((0..3).any(|k| !p.point.eval(&fam.quartic.derivative(k)).is_zero()));
        }
    }
}

#[test]
fn six_points_on_a_conic() {
    let pts: Vec<PointOrbit> =
        (1..=6).map(|i| PointOrbit::affine(Rat::from_int(i), Rat::from_int(i * i))).collect();
    assert!(curve_through_points(2, &pts, &vars()).exists);
    let mut off = pts.clone();
    off[5] = PointOrbit::affine(Rat::from_int(6), Rat::from_int(35));
    assert!(!curve_through_points(2, &off, &vars()).exists);
}

#[test]
fn verification_ignores_conic_order() {
    let c = CurveConfiguration::load(&data_dir().join("b2.json")).unwrap();
    let base = verify_configuration(&c, 7).unwrap();
    let mut swapped = c.clone();
    swapped.components.swap(1, 3);
    let other = verify_configuration(&swapped, 7).unwrap();
    assert!(base.passed() && other.passed());
    assert_eq!(base.records.len(), other.records.len());
    let points = |r: &zariski_core::geometry::VerifyReport| {
        let mut v: Vec<String> = r.records.iter().map(|x| format!("{:?}", x.location)).collect();
        v.sort();
        v
    };
    assert_eq!(points(&base), points(&other));
}
