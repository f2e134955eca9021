use proptest::prelude::*;

use zariski_core::alexander::{
    alexander_poly, alexander_poly_numeric, ell_k, evaluation_matrix, expand_factor, matrix_rank, tacnodes,
    threshold, ExpandedFactor,
};
use zariski_core::algebra::Rat;
use zariski_core::config::{identity_chart, Component, ComponentKind, CurveConfiguration, SingType, SingularPointRecord};
use zariski_core::data::data_dir;
use zariski_core::geometry::PointOrbit;

fn component(label: &str, kind: ComponentKind) -> Component {
    Component {
        label: label.into(),
        kind,
        degree: if kind == ComponentKind::Quartic { 4 } else { 2 },
        poly: None,
        family: None,
        parameter: None,
        class: None,
    }
}

/// Quartic plus one conic per point list, tangent to the quartic at the
/// listed affine points.
fn abstract_config(tangencies: &[Vec<(Rat, Rat)>]) -> CurveConfiguration {
    let mut components = vec![component("Q", ComponentKind::Quartic)];
    let mut singular_points = Vec::new();
    for (i, pts) in tangencies.iter().enumerate() {
        let label = format!("C{}", i + 1);
        components.push(component(&label, ComponentKind::Conic));
        for (x, y) in pts {
            singular_points.push(SingularPointRecord {
                sing_type: SingType::A3,
                on: vec!["Q".into(), label.clone()],
                location: PointOrbit::affine(x.clone(), y.clone()),
            });
        }
    }
    let c = CurveConfiguration {
        name: "random".into(),
        vars: ["x", "y", "z"].map(String::from).to_vec(),
        chart: None,
        lattice: None,
        components,
        singular_points,
    };
    c.validate().unwrap();
    c
}

fn rational() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| Rat::new(n, d))
}

/// `n` conics, four random tangency points each.
fn generic_config(n: usize) -> impl Strategy<Value = CurveConfiguration> {
    prop::collection::vec(prop::collection::vec((rational(), rational()), 4), n)
        .prop_filter("distinct points", |t| {
            let mut all: Vec<&(Rat, Rat)> = t.iter().flatten().collect();
            all.sort_by(|a, b| (a.0.to_f64(), a.1.to_f64()).partial_cmp(&(b.0.to_f64(), b.1.to_f64())).unwrap());
            all.windows(2).all(|w| w[0] != w[1])
        })
        .prop_map(|t| abstract_config(&t))
}

type Line = (Rat, Rat, Rat);

fn meet(l: &Line, m: &Line) -> Option<(Rat, Rat)> {
    let d = &l.0 * &m.1 - &l.1 * &m.0;
    if d.is_zero() {
        return None;
    }
    let x = (&l.1 * &m.2 - &l.2 * &m.1) / &d;
    let y = (&l.2 * &m.0 - &l.0 * &m.2) / &d;
    Some((x, y))
}

/// Three conics whose tangency points are the pairwise intersections of
/// three line pairs, so any two conics have their eight points on a conic.
fn six_line_config() -> impl Strategy<Value = CurveConfiguration> {
    prop::collection::vec((-6i64..=6, -6i64..=6, -9i64..=9), 6)
        .prop_filter_map("general position", |v| {
            let lines: Vec<Line> =
                v.iter().map(|&(a, b, c)| (Rat::from_int(a), Rat::from_int(b), Rat::from_int(c))).collect();
            let pair = |i: usize, j: usize| -> Option<Vec<(Rat, Rat)>> {
                let mut out = Vec::new();
                for l in &lines[2 * i..2 * i + 2] {
                    for m in &lines[2 * j..2 * j + 2] {
                        out.push(meet(l, m)?);
                    }
                }
                Some(out)
            };
            let t = vec![pair(0, 1)?, pair(0, 2)?, pair(1, 2)?];
            let mut all: Vec<&(Rat, Rat)> = t.iter().flatten().collect();
            all.sort_by(|a, b| (a.0.to_f64(), a.1.to_f64()).partial_cmp(&(b.0.to_f64(), b.1.to_f64())).unwrap());
            all.windows(2).all(|w| w[0] != w[1]).then(|| abstract_config(&t))
        })
}

fn corpus() -> Vec<CurveConfiguration> {
    (1..=4)
        .map(|i| CurveConfiguration::load(&data_dir().join(format!("b{i}_synthetic.json"))).unwrap())
        .collect()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

#[test]
fn nothing_below_the_threshold() {
    for c in corpus() {
        for s in subsets(c.components.len()).filter(|s| s[0] == 0 && s.len() > 1) {
            let sub = c.restrict(&s);
            let n = (sub.degree() - 4) / 2;
            for k in 1..threshold(n) {
                assert_eq!(ell_k(&sub, k).unwrap(), 0);
            }
        }
    }
}

#[test]
fn bundled_synthetic_rows() {
    let c = corpus();
    let row = |c: &CurveConfiguration| -> Vec<String> {
        [&[0, 1, 2][..], &[0, 1, 3], &[0, 2, 3], &[0, 1, 2, 3]]
            .iter()
            .map(|s| alexander_poly(&c.restrict(s)).unwrap().reduced_string())
            .collect()
    };
    assert_eq!(row(&c[0]), ["t^2+1", "t^2+1", "t^2+1", "1"]);
    assert_eq!(row(&c[1]), ["t^2+1", "1", "1", "1"]);
    assert_eq!(row(&c[2]), ["1", "1", "1", "1"]);
    assert_eq!(row(&c[3]), ["1", "1", "1", "1"]);
}

#[test]
fn expanded_factors_are_reciprocal() {
    for d in (6..=60).step_by(2) {
        for k in 1..d {
            match expand_factor(d, k) {
                ExpandedFactor::Rational(p) => {
                    let c = p.coeffs();
                    assert_eq!(c.len(), 3);
                    assert_eq!(c[0], Rat::one());
                    assert_eq!(c[0], c[2]);
                    let cos = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / d as f64).cos();
                    assert!((-c[1].to_f64() - cos).abs() < 1e-12, "d = {d}, k = {k}");
                }
                ExpandedFactor::Symbolic { d: dd, k: kk } => {
                    assert_eq!((dd, kk), (d, k));
                    assert!(![1, 2, 3, 4, 6].contains(&(d / num_integer::gcd(d, k))));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn top_factors_vanish((n, c) in (2u32..=4).prop_flat_map(|n| generic_config(n as usize).prop_map(move |c| (n, c)))) {
        prop_assert_eq!(ell_k(&c, 2 * n + 3).unwrap(), 0);
        if n >= 3 {
            prop_assert_eq!(ell_k(&c, 2 * n + 2).unwrap(), 0);
        }
    }

    #[test]
    fn three_conic_subconfigurations_are_trivial(c in prop_oneof![six_line_config(), generic_config(3), generic_config(4)]) {
        let n = c.components.len();
        for s in subsets(n).filter(|s| s.len() == 4 && s[0] == 0) {
            prop_assert!(alexander_poly(&c.restrict(&s)).unwrap().is_reduced_trivial());
        }
    }

    #[test]
    fn six_line_pairs_have_a_factor(c in six_line_config()) {
        for s in [[0, 1, 2], [0, 1, 3], [0, 2, 3]] {
            prop_assert_eq!(alexander_poly(&c.restrict(&s)).unwrap().reduced_string(), "t^2+1");
        }
    }

    #[test]
    fn rank_is_monotone(c in generic_config(3), extra in (rational(), rational()), deg in 1u32..5) {
        let pts: Vec<PointOrbit> = tacnodes(&c).iter().map(|r| r.location.clone()).collect();
        let chart = identity_chart();
        let mut more = pts.clone();
        more.push(PointOrbit::affine(extra.0, extra.1));
        let r0 = matrix_rank(&evaluation_matrix(&pts, &chart, deg).unwrap());
        let r1 = matrix_rank(&evaluation_matrix(&more, &chart, deg).unwrap());
        prop_assert!(r1 >= r0 && r1 <= r0 + 1);
        for k in 1..=9 {
            prop_assert!(ell_k(&c, k).unwrap() <= pts.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn numeric_ranks_agree(c in prop_oneof![six_line_config(), generic_config(3)]) {
        let exact = alexander_poly(&c).unwrap();
        let (numeric, certified) = alexander_poly_numeric(&c, 96).unwrap();
        prop_assert!(certified);
        prop_assert_eq!(exact, numeric);
    }
}
