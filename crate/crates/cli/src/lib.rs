//! Output records and renderers for the command-line front end.

use std::collections::BTreeMap;
use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use pretzel_hfk::hfk::Outcome;
use pretzel_hfk::{classify_table, ClosureSign, HfkTable, LaurentPolynomial, TangleParams, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotInfo {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub sign: String,
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRow {
    pub s: i64,
    pub delta_times_2: i64,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exp: i64,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub knot: KnotInfo,
    pub generators: Vec<GeneratorRow>,
    pub alexander: Vec<Term>,
    pub classification: String,
    pub checks: BTreeMap<String, String>,
    pub meta: Meta,
}

pub fn parse_sign(s: &str) -> Result<ClosureSign, String> {
    match s {
        "+" | "pos" | "positive" => Ok(ClosureSign::Positive),
        "-" | "neg" | "negative" => Ok(ClosureSign::Negative),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

pub fn knot_info(p: TangleParams) -> KnotInfo {
    let (x, y, z) = p.pretzel_triple();
    KnotInfo {
        a: p.a,
        b: p.b,
        c: p.c,
        sign: p.closure.symbol().to_string(),
        p: x,
        q: y,
        r: z,
    }
}

pub fn polynomial_terms(poly: &LaurentPolynomial) -> Result<Vec<Term>> {
    poly.terms()
        .map(|(exp, c)| {
            Ok(Term {
                exp,
                coeff: c.to_i64().ok_or_else(|| anyhow!("coefficient {c} exceeds i64"))?,
            })
        })
        .collect()
}

fn outcome_label(o: &Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail(_) => "fail",
        Outcome::Skipped(_) => "skipped",
    }
}

pub fn build_record(report: &VerificationReport, elapsed: Duration) -> Result<OutputRecord> {
    let table = report.table.as_ref().context("no table was computed")?;
    let generators = table
        .entries()
        .into_iter()
        .map(|(s, d, rank)| GeneratorRow {
            s,
            delta_times_2: d.twice(),
            rank,
        })
        .collect();
    let alexander = polynomial_terms(&table.euler_characteristic()?)?;
    let classification = match classify_table(table) {
        Ok(c) => c.name().to_string(),
        Err(_) => "irregular".to_string(),
    };
    let checks = report
        .checks
        .iter()
        .map(|c| (c.name.to_string(), outcome_label(&c.outcome).to_string()))
        .collect();
    Ok(OutputRecord {
        knot: knot_info(report.params),
        generators,
        alexander,
        classification,
        checks,
        meta: Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_us: u64::try_from(elapsed.as_micros()).unwrap_or(u64::MAX),
        },
    })
}

pub fn render_json(record: &OutputRecord) -> Result<String> {
    Ok(serde_json::to_string_pretty(record)?)
}

pub fn render_csv(record: &OutputRecord) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &record.generators {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn parse_csv(text: &str) -> Result<Vec<GeneratorRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

fn half(twice: i64) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

/// A tabular with one row per delta grading and one column per Alexander grading.
pub fn render_latex(record: &OutputRecord) -> String {
    let svals: Vec<i64> = {
        let mut v: Vec<i64> = record.generators.iter().map(|g| g.s).collect();
        v.sort();
        v.dedup();
        v
    };
    let mut deltas: Vec<i64> = record.generators.iter().map(|g| g.delta_times_2).collect();
    deltas.sort();
    deltas.dedup();
    deltas.reverse();
    let rank = |s: i64, d: i64| {
        record
            .generators
            .iter()
            .find(|g| g.s == s && g.delta_times_2 == d)
            .map_or(0, |g| g.rank)
    };
    let k = &record.knot;
    let mut out = String::new();
    out.push_str(&format!("% HFK of P({},{},{})\n", k.p, k.q, k.r));
    out.push_str(&format!(
        "\\begin{{tabular}}{{|c|{}}}\n\\hline\n",
        "c|".repeat(svals.len())
    ));
    let header: Vec<String> = svals.iter().map(|s| format!("$s={s}$")).collect();
    out.push_str(&format!("& {}\n\\\\\n\\hline\n", header.join(" & ")));
    for d in deltas {
        let cells: Vec<String> = svals.iter().map(|&s| rank(s, d).to_string()).collect();
        out.push_str(&format!(
            "$\\delta= {}$ & {}\\\\\n\\hline\n",
            half(d),
            cells.join(" & ")
        ));
    }
    out.push_str("\\end{tabular}\n");
    out
}

/// Dot plot in the `(s, μ)` plane with `μ = s - δ`; the lowest delta is put on `μ = s`.
pub fn render_ascii(table: &HfkTable) -> String {
    let deltas = table.deltas();
    let Some(base) = deltas.first().copied() else {
        return "empty table\n".into();
    };
    let points: Vec<(i64, i64, u64)> = table
        .entries()
        .into_iter()
        .map(|(s, d, r)| {
            let shift = (d - base).to_integer().expect("deltas differ by integers");
            (s, s - shift, r)
        })
        .collect();
    let (smin, smax) = (
        points.iter().map(|p| p.0).min().unwrap(),
        points.iter().map(|p| p.0).max().unwrap(),
    );
    let (mmin, mmax) = (
        points.iter().map(|p| p.1).min().unwrap(),
        points.iter().map(|p| p.1).max().unwrap(),
    );
    let mut out = format!(
        "{}  (delta offset is conventional: delta {} drawn on mu = s)\n",
        table.params, base
    );
    for mu in (mmin..=mmax).rev() {
        out.push_str(&format!("{mu:>4} |"));
        for s in smin..=smax {
            let cell = match points.iter().find(|p| p.0 == s && p.1 == mu) {
                Some(&(_, _, r)) if r < 10 => r.to_string(),
                Some(_) => "*".into(),
                None if mu == s => "/".into(),
                None => ".".into(),
            };
            out.push_str(&format!(" {cell:>2}"));
        }
        out.push('\n');
    }
    out.push_str(&format!("     +{}\n", "---".repeat((smax - smin + 1) as usize)));
    out.push_str("   s  ");
    for s in smin..=smax {
        out.push_str(&format!("{s:>3}"));
    }
    out.push('\n');
    out
}
