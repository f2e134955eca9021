//! Text renderings. Each is a projection of the JSON output.

use std::fmt::Write;

use zariski_core::algebra::Rat;
use zariski_core::config::ComponentKind;
use zariski_core::cover::{AlexTable, CovTable, Verdict};
use zariski_core::elliptic::FiberReport;
use zariski_core::geometry::VerifyReport;

fn ord(v: Option<i64>) -> String {
    v.map_or("inf".into(), |v| v.to_string())
}

pub fn fibers(fibers: &[FiberReport]) -> String {
    let mut s = String::from("place\ttype\tord(c4)\tord(c6)\tord(delta)\n");
    for f in fibers {
        let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", f.place, f.kodaira, ord(f.ord_c4), ord(f.ord_c6), f.ord_delta);
    }
    let total: i64 = fibers.iter().map(|f| f.ord_delta * f.place.degree() as i64).sum();
    let _ = writeln!(s, "total ord(delta) = {total}");
    s
}

pub fn matrix(names: &[String], m: &[Vec<Rat>]) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let w = cells.iter().flatten().map(|c| c.len()).chain(names.iter().map(|n| n.len())).max().unwrap_or(1);
    let mut s = format!("{:w$}", "");
    for n in names {
        let _ = write!(s, " {n:>w$}");
    }
    s.push('\n');
    for (n, row) in names.iter().zip(&cells) {
        let _ = write!(s, "{n:w$}");
        for c in row {
            let _ = write!(s, " {c:>w$}");
        }
        s.push('\n');
    }
    s
}

/// Whether the table belongs to a quartic followed by three conics.
fn standard_shape(kinds: &[ComponentKind]) -> bool {
    kinds == [ComponentKind::Quartic, ComponentKind::Conic, ComponentKind::Conic, ComponentKind::Conic]
}

const COV_COLUMNS: [(&[usize], &str); 4] = [
    (&[0, 1, 2], "(2,p,p,1)"),
    (&[0, 1, 3], "(2,p,1,p)"),
    (&[0, 2, 3], "(2,1,p,p)"),
    (&[0, 1, 2, 3], "(2,p,p,p)"),
];

const ALEX_COLUMNS: [&[usize]; 4] = [&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[0, 1, 2, 3]];

fn row_width(names: impl Iterator<Item = usize>) -> usize {
    names.max().unwrap_or(0).max(2)
}

pub fn cov_tables(tables: &[(String, CovTable)], p: u64) -> String {
    let mut s = format!("p = {p}\n");
    let w = row_width(tables.iter().map(|t| t.0.len()));
    if tables.iter().all(|t| standard_shape(&t.1.kinds)) {
        let _ = write!(s, "{:w$}", "");
        for (_, h) in COV_COLUMNS {
            let _ = write!(s, " {h:>9}");
        }
        s.push('\n');
        for (name, t) in tables {
            let _ = write!(s, "{name:w$}");
            for (subset, _) in COV_COLUMNS {
                let e: Vec<u64> = subset.iter().map(|&i| if i == 0 { 2 } else { p }).collect();
                let cell = t.get(subset, &e).map_or("?".into(), |v| v.to_string());
                let _ = write!(s, " {cell:>9}");
            }
            s.push('\n');
        }
        return s;
    }
    for (name, t) in tables {
        let _ = writeln!(s, "{name}");
        for (k, v) in &t.entries {
            let labels: Vec<&str> = k.subset.iter().map(|&i| t.labels[i].as_str()).collect();
            let _ = writeln!(s, "  {} {:?} {v}", labels.join("+"), k.ramification);
        }
    }
    s
}

pub fn alex_tables(tables: &[(String, AlexTable)]) -> String {
    let mut s = String::new();
    let w = row_width(tables.iter().map(|t| t.0.len()));
    if tables.iter().all(|t| standard_shape(&t.1.kinds)) {
        let labels = &tables[0].1.labels;
        let _ = write!(s, "{:w$}", "");
        for sub in ALEX_COLUMNS {
            let h = if sub.len() == labels.len() {
                "B".to_string()
            } else {
                sub.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("+")
            };
            let _ = write!(s, " {h:>10}");
        }
        s.push('\n');
        for (name, t) in tables {
            let _ = write!(s, "{name:w$}");
            for sub in ALEX_COLUMNS {
                let cell = t.get(sub, &[]).map_or("?".into(), |v| v.reduced_string());
                let _ = write!(s, " {cell:>10}");
            }
            s.push('\n');
        }
        return s;
    }
    for (name, t) in tables {
        let _ = writeln!(s, "{name}");
        for (k, v) in &t.entries {
            let labels: Vec<&str> = k.subset.iter().map(|&i| t.labels[i].as_str()).collect();
            let _ = writeln!(s, "  {} {}", labels.join("+"), v.reduced_string());
        }
    }
    s
}

fn pairs(v: &[(String, String)]) -> String {
    v.iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(", ")
}

pub fn verdict(v: &Verdict) -> String {
    let mut s = format!("{}\n", v.verdict);
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "witness: {}", pairs(w));
    }
    if let Some(c) = &v.certificate {
        let _ = writeln!(
            s,
            "certificate: under {} the entry {} {:?} is {} but its image is {}",
            pairs(&c.eta),
            c.subset.join("+"),
            c.ramification,
            c.first,
            c.second.as_deref().unwrap_or("missing")
        );
    }
    s
}

pub fn report(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        let _ = write!(s, "{mark:6} {}", c.name);
        if let Some(d) = &c.detail {
            let _ = write!(s, ": {d}");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{} singular point orbits from intersections", r.records.len());
    s
}

pub fn knt(parts: &[[usize; 3]], verdicts: &[Vec<Verdict>]) -> String {
    let name = |p: &[usize; 3]| format!("({},{},{})", p[0], p[1], p[2]);
    let w = parts.iter().map(|p| name(p).len()).max().unwrap_or(0);
    let mut s = String::new();
    for (i, row) in verdicts.iter().enumerate() {
        for (j, v) in row.iter().enumerate().skip(i + 1) {
            let _ = writeln!(s, "{:w$} vs {:w$}: {}", name(&parts[i]), name(&parts[j]), v.verdict);
        }
    }
    if parts.len() < 2 {
        s.push_str("no pairs to compare\n");
    }
    s
}
