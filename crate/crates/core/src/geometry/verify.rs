use rayon::prelude::*;
use serde::Serialize;

use super::{conic_is_smooth, intersection_cycle, GeometryError, IntersectionCycle, PointOrbit};
use crate::algebra::{Field, Poly};
use crate::config::{ComponentKind, CurveConfiguration, SingType, SingularPointRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// Singular points created by the intersections of components.
    pub records: Vec<SingularPointRecord>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn check(checks: &mut Vec<Check>, name: String, failure: Option<String>) {
    checks.push(Check { name, passed: failure.is_none(), detail: failure });
}

fn smooth_on(f: &Poly, p: &PointOrbit) -> bool {
    (0..3).any(|i| !p.eval(&f.derivative(i)).is_zero())
}

/// Checks the hypotheses on a configuration of a quartic and conics:
/// smoothness of the conics, tangency of every conic to the quartic with
/// multiplicity 2 at 4 smooth points of the quartic, transversality of the
/// conics to each other, absence of triple points and transversality to the
/// line at infinity of the declared chart.
pub fn verify_configuration(config: &CurveConfiguration, seed: u64) -> Result<VerifyReport, GeometryError> {
    config.validate().map_err(GeometryError::Input)?;
    let comps = &config.components;
    let polys: Vec<&Poly> = comps
        .iter()
        .map(|c| c.poly.as_ref().ok_or_else(|| GeometryError::Input(format!("component {} has no equation", c.label))))
        .collect::<Result<_, _>>()?;
    let n = comps.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let cycles: Vec<IntersectionCycle> = pairs
        .par_iter()
        .map(|&(i, j)| intersection_cycle(polys[i], polys[j], seed))
        .collect::<Result<_, _>>()?;
    let mut checks = Vec::new();
    let mut records = Vec::new();
    for (c, p) in comps.iter().zip(&polys) {
        if c.kind == ComponentKind::Conic {
            let bad = (!conic_is_smooth(p)).then(|| "the conic is singular".to_string());
            check(&mut checks, format!("{} is a smooth conic", c.label), bad);
        }
    }
    for (&(i, j), cyc) in pairs.iter().zip(&cycles) {
        let (a, b) = (&comps[i], &comps[j]);
        let name = format!("{} meets {}", a.label, b.label);
        let bezout = (a.degree * b.degree) as usize;
        if cyc.total() != bezout {
            check(&mut checks, name, Some(format!("intersection number {} instead of {bezout}", cyc.total())));
            continue;
        }
        let on = vec![a.label.clone(), b.label.clone()];
        let tangency = match (a.kind, b.kind) {
            (ComponentKind::Quartic, ComponentKind::Conic) => Some(polys[i]),
            (ComponentKind::Conic, ComponentKind::Quartic) => Some(polys[j]),
            _ => None,
        };
        let mut failure = None;
        for pt in &cyc.points {
            let (want, ty) = if tangency.is_some() { (2, SingType::A3) } else { (1, SingType::A1) };
            if pt.multiplicity != want {
                failure = Some(format!("multiplicity {} at {:?}, expected {want}", pt.multiplicity, pt.point));
                break;
            }
            if let Some(q) = tangency {
                if !smooth_on(q, &pt.point) {
                    failure = Some(format!("{:?} is a singular point of the quartic", pt.point));
                    break;
                }
            }
            records.push(SingularPointRecord { sing_type: ty, on: on.clone(), location: pt.point.clone() });
        }
        let label = if tangency.is_some() {
            format!("{name} with multiplicity 2 at 4 smooth points")
        } else {
            format!("{name} transversally")
        };
        check(&mut checks, label, failure);
    }
    let mut triple = None;
    'outer: for (&(i, j), cyc) in pairs.iter().zip(&cycles) {
        for pt in &cyc.points {
            if let Some(k) = (0..n).find(|&k| k != i && k != j && pt.point.lies_on(polys[k])) {
                triple = Some(format!(
                    "{}, {} and {} meet at {:?}",
                    comps[i].label, comps[j].label, comps[k].label, pt.point
                ));
                break 'outer;
            }
        }
    }
    check(&mut checks, "no three components meet at a point".into(), triple);

    let line = config.line_at_infinity();
    let line_cycles: Vec<Result<IntersectionCycle, GeometryError>> =
        polys.par_iter().map(|p| intersection_cycle(p, &line, seed)).collect();
    let mut failure = None;
    for (c, r) in comps.iter().zip(line_cycles) {
        match r {
            Err(GeometryError::CommonComponent) => {
                failure = Some(format!("{} contains the line at infinity", c.label));
            }
            Err(e) => return Err(e),
            Ok(cyc) => {
                if let Some(pt) = cyc.points.iter().find(|pt| pt.multiplicity != 1) {
                    failure = Some(format!("{} is not transverse to the line at infinity at {:?}", c.label, pt.point));
                }
            }
        }
        if failure.is_some() {
            break;
        }
    }
    if failure.is_none() {
        let sing = records.iter().chain(&config.singular_points);
        if let Some(r) = sing.into_iter().find(|r| r.location.lies_on(&line)) {
            failure = Some(format!("singular point {:?} lies on the line at infinity", r.location));
        }
    }
    check(&mut checks, "line at infinity is transverse".into(), failure);
    Ok(VerifyReport { checks, records })
}

/// Completes the singular point records of a configuration. Configurations
/// with equations are verified first and fail when a check fails; abstract
/// configurations are returned unchanged.
pub fn resolve(config: &CurveConfiguration, seed: u64) -> Result<CurveConfiguration, GeometryError> {
    if !config.has_equations() {
        config.validate().map_err(GeometryError::Input)?;
        return Ok(config.clone());
    }
    let report = verify_configuration(config, seed)?;
    if let Some(c) = report.failures().first() {
        return Err(GeometryError::Verification(format!(
            "{}: {}",
            c.name,
            c.detail.clone().unwrap_or_default()
        )));
    }
    let mut out = config.clone();
    out.singular_points.extend(report.records);
    Ok(out)
}
