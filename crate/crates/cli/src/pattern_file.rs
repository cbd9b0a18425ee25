//! Text form of a [`MeasurementPattern`].
//!
//! ```text
//! csscluster-pattern 1
//! seed 0
//! code triangular-s2
//! grid 216 18
//! policy greedy-pair
//! outputs 9 1307 1313 ...
//! cells 3
//! cell 0 - 0 1 2          (color or `-`, then qubits)
//! cellsteps 3
//! cellstep 812 0          (step, cell)
//! merges 0
//! merge 1 44 45 46        (cell, root, a, b)
//! steps 3879
//! 0 14 Z FaceInsert       (order, vertex, basis, rule)
//! corrections 12
//! correction 5 depends 0 3
//! 5 ++ -> I
//! 5 -+ -> 40:Z 41:X
//! ```
//!
//! Each correction is followed by one row per outcome combination of its
//! `depends` steps. A `-` at position `i` means step `depends[i]` gave `-1`.

use std::fmt::Write as _;

use csscluster_core::compiler::{CellMeasurement, Correction, MeasurementPattern, Step};
use csscluster_core::graph_state::{Basis, Rule};
use csscluster_core::local::Gate1;

use crate::error::{CliError, CliResult};

const MAGIC: &str = "csscluster-pattern 1";

const RULES: [(Rule, &str); 8] = [
    (Rule::Uniformize, "Uniformize"),
    (Rule::FaceInsert, "FaceInsert"),
    (Rule::LinkInsert, "LinkInsert"),
    (Rule::Flatten, "Flatten"),
    (Rule::LocalComplement, "LocalComplement"),
    (Rule::MeasureX, "MeasureX"),
    (Rule::MeasureY, "MeasureY"),
    (Rule::MeasureZ, "MeasureZ"),
];

pub fn rule_name(r: Rule) -> &'static str {
    RULES.iter().find(|x| x.0 == r).map(|x| x.1).unwrap()
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn signs(k: usize, width: usize) -> String {
    (0..width).map(|b| if k >> b & 1 == 1 { '-' } else { '+' }).collect()
}

pub fn write_pattern(p: &MeasurementPattern, code: &str, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "seed {seed}");
    let _ = writeln!(s, "code {code}");
    let _ = writeln!(s, "grid {} {}", p.width, p.height);
    let _ = writeln!(s, "policy {}", p.excitation_policy);
    let _ = writeln!(s, "outputs {} {}", p.output_map.len(), join(&p.output_map));
    let _ = writeln!(s, "cells {}", p.z_cells.len());
    for (i, c) in p.z_cells.iter().enumerate() {
        let color = p.z_colors.as_ref().map_or("-".to_string(), |cs| cs[i].to_string());
        let _ = writeln!(s, "cell {i} {color} {}", join(c));
    }
    let _ = writeln!(s, "cellsteps {}", p.cell_steps.len());
    for m in &p.cell_steps {
        let _ = writeln!(s, "cellstep {} {}", m.step, m.cell);
    }
    let _ = writeln!(s, "merges {}", p.merges.len());
    for &(c, r, a, b) in &p.merges {
        let _ = writeln!(s, "merge {c} {r} {a} {b}");
    }
    let _ = writeln!(s, "steps {}", p.steps.len());
    for (i, st) in p.steps.iter().enumerate() {
        let _ = writeln!(s, "{i} {} {} {}", st.vertex, st.basis, rule_name(st.rule));
    }
    let _ = writeln!(s, "corrections {}", p.corrections.len());
    for c in &p.corrections {
        let _ = writeln!(s, "correction {} depends {}", c.after, join(&c.depends));
        for (k, row) in c.table.iter().enumerate() {
            let layer = if row.is_empty() {
                "I".to_string()
            } else {
                row.iter().map(|(q, g)| format!("{q}:{g}")).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(s, "{} {} -> {layer}", c.after, signs(k, c.depends.len()));
        }
    }
    s
}

struct Lines<'a> {
    path: &'a str,
    it: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse { path: self.path.into(), line: self.line, msg: msg.into() }
    }

    fn next(&mut self) -> CliResult<Vec<&'a str>> {
        for (i, l) in self.it.by_ref() {
            self.line = i + 1;
            let l = l.trim();
            if !l.is_empty() {
                return Ok(l.split_whitespace().collect());
            }
        }
        Err(CliError::Parse { path: self.path.into(), line: self.line + 1, msg: "unexpected end of file".into() })
    }

    fn keyed(&mut self, key: &str) -> CliResult<Vec<&'a str>> {
        let t = self.next()?;
        if t.first() != Some(&key) {
            return Err(self.err(format!("expected `{key}`")));
        }
        Ok(t[1..].to_vec())
    }

    fn num(&self, s: &str) -> CliResult<usize> {
        s.parse().map_err(|_| self.err(format!("bad number `{s}`")))
    }

    fn nums(&self, xs: &[&str]) -> CliResult<Vec<usize>> {
        xs.iter().map(|x| self.num(x)).collect()
    }

    fn count(&mut self, key: &str) -> CliResult<usize> {
        let t = self.keyed(key)?;
        if t.len() != 1 {
            return Err(self.err(format!("`{key}` takes one number")));
        }
        self.num(t[0])
    }
}

/// Parsed pattern with its header.
#[derive(Clone, Debug)]
pub struct PatternFile {
    pub seed: u64,
    pub code: String,
    pub pattern: MeasurementPattern,
}

pub fn parse_pattern(path: &str, text: &str) -> CliResult<PatternFile> {
    let mut l = Lines { path, it: text.lines().enumerate(), line: 0 };
    if l.next()?.join(" ") != MAGIC {
        return Err(l.err(format!("expected `{MAGIC}`")));
    }
    let seed = {
        let t = l.keyed("seed")?;
        t.first().and_then(|s| s.parse().ok()).ok_or_else(|| l.err("bad seed"))?
    };
    let code = l.keyed("code")?.join(" ");
    let grid = l.keyed("grid")?;
    if grid.len() != 2 {
        return Err(l.err("`grid` takes width and height"));
    }
    let (width, height) = (l.num(grid[0])?, l.num(grid[1])?);
    let excitation_policy = l.keyed("policy")?.join(" ");
    let outs = l.keyed("outputs")?;
    let output_map = l.nums(outs.get(1..).unwrap_or(&[]))?;
    if outs.is_empty() || l.num(outs[0])? != output_map.len() {
        return Err(l.err("output count does not match the list"));
    }
    let mut z_cells = Vec::new();
    let mut colors = Vec::new();
    for i in 0..l.count("cells")? {
        let t = l.keyed("cell")?;
        if t.len() < 2 || l.num(t[0])? != i {
            return Err(l.err(format!("expected cell {i}")));
        }
        colors.push(if t[1] == "-" { None } else { Some(l.num(t[1])? as u8) });
        z_cells.push(l.nums(&t[2..])?);
    }
    let z_colors = if colors.iter().all(Option::is_some) && !colors.is_empty() {
        Some(colors.iter().map(|c| c.unwrap()).collect())
    } else if colors.iter().all(Option::is_none) {
        None
    } else {
        return Err(l.err("either every cell has a color or none does"));
    };
    let mut cell_steps = Vec::new();
    for _ in 0..l.count("cellsteps")? {
        let t = l.keyed("cellstep")?;
        let t = l.nums(&t)?;
        if t.len() != 2 {
            return Err(l.err("`cellstep` takes step and cell"));
        }
        cell_steps.push(CellMeasurement { step: t[0], cell: t[1] });
    }
    let mut merges = Vec::new();
    for _ in 0..l.count("merges")? {
        let t = l.keyed("merge")?;
        let t = l.nums(&t)?;
        if t.len() != 4 {
            return Err(l.err("`merge` takes cell, root, a, b"));
        }
        merges.push((t[0], t[1], t[2], t[3]));
    }
    let mut steps = Vec::new();
    for i in 0..l.count("steps")? {
        let t = l.next()?;
        if t.len() != 4 || l.num(t[0])? != i {
            return Err(l.err(format!("expected step {i}: `order vertex basis rule`")));
        }
        let vertex = l.num(t[1])?;
        let mut ch = t[2].chars();
        let basis = match (ch.next().and_then(Basis::from_char), ch.next()) {
            (Some(b), None) => b,
            _ => return Err(l.err(format!("bad basis `{}`", t[2]))),
        };
        let rule = RULES.iter().find(|r| r.1 == t[3]).map(|r| r.0).ok_or_else(|| l.err(format!("bad rule `{}`", t[3])))?;
        steps.push(Step { vertex, basis, rule });
    }
    let mut corrections = Vec::new();
    for _ in 0..l.count("corrections")? {
        let t = l.keyed("correction")?;
        if t.len() < 2 || t[1] != "depends" {
            return Err(l.err("expected `correction <after> depends ...`"));
        }
        let after = l.num(t[0])?;
        let depends = l.nums(&t[2..])?;
        if depends.len() > 16 {
            return Err(l.err("too many dependencies"));
        }
        let mut table = Vec::new();
        for k in 0..1usize << depends.len() {
            let t = l.next()?;
            if t.len() < 4 || l.num(t[0])? != after || t[1] != signs(k, depends.len()) || t[2] != "->" {
                return Err(l.err(format!("expected `{after} {} -> ...`", signs(k, depends.len()))));
            }
            let mut row = Vec::new();
            if t[3..] != ["I"] {
                for item in &t[3..] {
                    let (q, g) = item.split_once(':').ok_or_else(|| l.err(format!("bad gate `{item}`")))?;
                    let g = Gate1::from_name(g).ok_or_else(|| l.err(format!("bad gate `{item}`")))?;
                    row.push((l.num(q)?, g));
                }
            }
            table.push(row);
        }
        corrections.push(Correction { after, depends, table });
    }
    if let Ok(t) = l.next() {
        return Err(l.err(format!("trailing content `{}`", t.join(" "))));
    }
    let pattern = MeasurementPattern {
        width,
        height,
        steps,
        output_map,
        corrections,
        cell_steps,
        merges,
        z_cells,
        z_colors,
        excitation_policy,
    };
    pattern.validate()?;
    Ok(PatternFile { seed, code, pattern })
}
