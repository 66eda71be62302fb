use num_rational::BigRational;
use serde_json::{json, Map, Value};

use unipow::genfun::{FactorCounts, SeriesKind};
use unipow::oracle::{build_group_with, power_image_counts, ClassFamily, FamilyCounts};
use unipow::{CountRecord, Result};

use crate::config::{Command, RunConfig};
use crate::report::{decimal_text, rational_text, Cell, Report};

pub struct Outcome {
    pub report: Report,
    /// False when a verification row failed.
    pub passed: bool,
}

fn meta(cfg: &RunConfig) -> Map<String, Value> {
    let opt = |v: Option<&str>| v.map_or(Value::Null, |s| json!(s));
    let mut m = Map::new();
    m.insert("command".into(), json!(command_name(cfg.command)));
    m.insert("q".into(), json!(cfg.q.q()));
    m.insert("M".into(), json!(cfg.m));
    m.insert("T".into(), json!(cfg.t));
    m.insert("family".into(), opt(cfg.family.map(|f| f.short_name())));
    m.insert("kind".into(), opt(cfg.kind.map(|k| k.short_name())));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    match cfg.command {
        Command::Counts => {
            m.insert("d_max".into(), json!(cfg.d_max));
        }
        Command::Verify | Command::Table => {
            m.insert("n_max".into(), json!(cfg.n_max));
        }
        Command::Series => {}
    }
    m
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Counts => "counts",
        Command::Series => "series",
        Command::Verify => "verify",
        Command::Table => "table",
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        Command::Counts => run_counts(cfg),
        Command::Series => run_series(cfg),
        Command::Verify => run_verify(cfg),
        Command::Table => run_table(cfg),
    }
}

pub fn run_counts(cfg: &RunConfig) -> Result<Outcome> {
    let columns = vec![
        "q", "d", "M", "N_tilde", "N_tilde_M", "R_tilde", "R_tilde_M", "S_tilde_prime", "S_prime",
    ];
    let mut report = Report::new(columns, meta(cfg));
    for d in 1..=cfg.d_max {
        let r = CountRecord::compute(cfg.q, d, cfg.m)?;
        report.push(
            [r.q, r.d, r.m, r.n_tilde, r.n_tilde_m, r.r_tilde, r.r_tilde_m, r.s_tilde_prime, r.s_prime]
                .into_iter()
                .map(Cell::from)
                .collect(),
        );
    }
    Ok(Outcome { report, passed: true })
}

pub fn run_series(cfg: &RunConfig) -> Result<Outcome> {
    let family = cfg.family.expect("validated");
    let kind = cfg.kind.expect("validated");
    let series = cfg.request(family, kind).compute()?;
    let mut report = Report::new(vec!["n", "coefficient", "decimal"], meta(cfg));
    for (n, c) in series.coeffs().iter().enumerate() {
        report.push(vec![Cell::Int(n as u64), rational_text(c).into(), decimal_text(c).into()]);
    }
    Ok(Outcome { report, passed: true })
}

fn oracle_value(counts: FamilyCounts, kind: SeriesKind, order: u64) -> BigRational {
    match kind {
        SeriesKind::Classes => BigRational::from_integer(counts.image_classes.into()),
        SeriesKind::Elements => BigRational::new(counts.image_elements.into(), order.into()),
    }
}

pub fn run_verify(cfg: &RunConfig) -> Result<Outcome> {
    let columns = vec!["n", "family", "kind", "series", "oracle", "status"];
    let mut report = Report::new(columns, meta(cfg));
    let families = cfg.families();
    let kinds = cfg.kinds();
    let factor_counts = FactorCounts::for_power(cfg.q, cfg.m, cfg.n_max)?;
    let mut series = Vec::new();
    for &family in &families {
        for &kind in &kinds {
            cfg.request(family, kind).validate()?;
            series.push((family, kind, unipow::genfun::series_from(family, kind, &factor_counts)?));
        }
    }
    let mut passed = true;
    for n in 1..=cfg.n_max {
        let group = build_group_with(n, cfg.q, &cfg.build)?;
        let image = power_image_counts(&group, cfg.m)?;
        for (family, kind, s) in &series {
            let want = oracle_value(image.family(*family), *kind, image.group_order);
            let got = s.coeff(n);
            let ok = *got == want;
            passed &= ok;
            report.push(vec![
                Cell::Int(n as u64),
                family.short_name().into(),
                kind.short_name().into(),
                rational_text(got).into(),
                rational_text(&want).into(),
                if ok { "PASS" } else { "FAIL" }.into(),
            ]);
        }
    }
    Ok(Outcome { report, passed })
}

pub fn run_table(cfg: &RunConfig) -> Result<Outcome> {
    let columns = vec!["n", "family", "kind", "image", "total", "group_order"];
    let mut report = Report::new(columns, meta(cfg));
    let families = match cfg.family {
        Some(f) => vec![f],
        None => ClassFamily::ALL.to_vec(),
    };
    for n in 1..=cfg.n_max {
        let group = build_group_with(n, cfg.q, &cfg.build)?;
        let image = power_image_counts(&group, cfg.m)?;
        for &family in &families {
            let c = image.family(family);
            for kind in cfg.kinds() {
                let (hit, total) = match kind {
                    SeriesKind::Classes => (c.image_classes, c.total_classes),
                    SeriesKind::Elements => (c.image_elements, c.total_elements),
                };
                report.push(vec![
                    Cell::Int(n as u64),
                    family.short_name().into(),
                    kind.short_name().into(),
                    Cell::Int(hit),
                    Cell::Int(total),
                    Cell::Int(image.group_order),
                ]);
            }
        }
    }
    Ok(Outcome { report, passed: true })
}
