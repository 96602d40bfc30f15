//! The closed-form table of `γ_α` for the catalog types.

use std::fmt::Write as _;

use equising_core::invariants::catalog::{table, TableRow};
use equising_core::invariants::{Alpha, Family};
use equising_core::rational::fmt_q;
use serde::Serialize;

use crate::output::Meta;

#[derive(Serialize)]
struct JsonRow {
    #[serde(rename = "type")]
    ty: String,
    tau: Option<u64>,
    tau_ci: Option<u64>,
    gamma: Vec<JsonCell>,
}

#[derive(Serialize)]
struct JsonCell {
    alpha: String,
    value: String,
}

#[derive(Serialize)]
struct JsonTable {
    meta: Meta,
    table: Vec<JsonRow>,
}

pub fn rows(family: Family, from: u32, to: u32, alphas: &[Alpha]) -> Vec<TableRow> {
    table(family, from, to, alphas)
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

pub fn render_text(rows: &[TableRow], alphas: &[Alpha]) -> String {
    let mut header = vec!["type".to_string(), "tau".into(), "tau_ci".into()];
    header.extend(alphas.iter().map(|a| format!("gamma_{a}")));
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut cells = vec![r.ty.to_string(), opt(r.tau), opt(r.tau_ci)];
            cells.extend(r.gamma.iter().map(|(_, v)| fmt_q(v)));
            cells
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            body.iter()
                .map(|c| c[i].chars().count())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in std::iter::once(&header).chain(&body) {
        let cells: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    out
}

pub fn render_json(rows: &[TableRow]) -> anyhow::Result<String> {
    let table = rows
        .iter()
        .map(|r| JsonRow {
            ty: r.ty.to_string(),
            tau: r.tau,
            tau_ci: r.tau_ci,
            gamma: r
                .gamma
                .iter()
                .map(|(a, v)| JsonCell {
                    alpha: a.to_string(),
                    value: fmt_q(v),
                })
                .collect(),
        })
        .collect();
    crate::output::to_json(&JsonTable {
        meta: Meta::default(),
        table,
    })
}

pub fn render_csv(rows: &[TableRow], alphas: &[Alpha]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["type".to_string(), "tau".into(), "tau_ci".into()];
    header.extend(alphas.iter().map(|a| format!("gamma_{a}")));
    w.write_record(&header)?;
    for r in rows {
        let mut cells = vec![r.ty.to_string(), opt(r.tau), opt(r.tau_ci)];
        cells.extend(r.gamma.iter().map(|(_, v)| fmt_q(v)));
        w.write_record(&cells)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
