//! Plain-text rendering.

use cds_core::Certificate;

/// Left-aligned columns separated by two spaces, with a header rule.
pub fn table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in &rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  "));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in &rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn witness_text(c: &Certificate) -> String {
    c.witnesses
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn certificate_text(c: &Certificate) -> String {
    let p = &c.params;
    let mut s = format!(
        "(n, k, lambda) = ({}, {}, {}), d = {}\nverdict: {}\n",
        p.n(),
        p.k(),
        p.lambda(),
        c.d,
        c.verdict
    );
    if let Some(r) = c.rule {
        s += &format!("rule: {r}\n");
    }
    if !c.witnesses.is_empty() {
        s += &format!("witnesses: {}\n", witness_text(c));
    }
    if let Some(set) = &c.witness_set {
        s += &format!("witness set: {set:?}\n");
    }
    if let Some(r) = &c.reason {
        s += &format!("note: {r}\n");
    }
    s
}
