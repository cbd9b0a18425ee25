//! Compile a CSS code state into single-qubit measurements on a 2D cluster.
//!
//! The code is first turned into a bipartite graph (one white vertex per
//! independent z-cell). Whites of degree above four are split into a chain
//! that the uniformizing rule merges back. That graph is drawn on the grid
//! with [`layout`]; the unused grid vertices are Z-measured, crossings are
//! flattened and wires are shortened by Y measurements, and finally the
//! chain ancillas and whites are X-measured.

mod excite;
mod execute;
pub mod layout;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::codes::CssCode;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph_state::{Basis, GraphStateRep, Rule};
use crate::local::Gate1;

pub use excite::{correct_excitations, CorrectionString, ExcitationRecord};
pub use execute::{execute, verify, verify_seed, VerifyReport};
pub use layout::{Layout, Wire};

/// Black vertices `0..n` are the code qubits; white `i` stands for z-cell
/// `cells[i]` and is adjacent to exactly its qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraphState {
    pub n_black: usize,
    pub cells: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraphState {
    pub fn white(&self, i: usize) -> usize {
        self.n_black + i
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for v in 0..self.n_black + self.cells.len() {
            g.add_vertex(v);
        }
        for &(w, b) in &self.edges {
            g.add_edge(self.white(w), b).expect("valid edge");
        }
        g
    }
}

pub fn cell_insertion(code: &CssCode) -> BipartiteGraphState {
    let cells = code.hz().independent_rows();
    let mut edges = Vec::new();
    for (w, &c) in cells.iter().enumerate() {
        for &q in &code.z_cells[c] {
            edges.push((w, q));
        }
    }
    BipartiteGraphState { n_black: code.n, cells, edges }
}

/// One merge `c – a – b` of a split white vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Merge {
    pub cell: usize,
    pub root: usize,
    pub a: usize,
    pub b: usize,
}

/// The bipartite graph with every white of degree above four split into a
/// root and a chain `root – a1 – b1 – a2 – b2 – …`, each `b` holding up to two
/// qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGraph {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// `(vertex, z-cell)` for each white (or chain root).
    pub whites: Vec<(usize, usize)>,
    pub merges: Vec<Merge>,
}

pub fn split_whites(bip: &BipartiteGraphState, code: &CssCode) -> SplitGraph {
    let mut next = bip.n_black;
    let mut edges = Vec::new();
    let mut whites = Vec::new();
    let mut merges = Vec::new();
    for &c in &bip.cells {
        let qubits = &code.z_cells[c];
        let w = next;
        next += 1;
        whites.push((w, c));
        if qubits.len() <= 4 {
            edges.extend(qubits.iter().map(|&q| (w, q)));
            continue;
        }
        let mut prev = w;
        for chunk in qubits.chunks(2) {
            let (a, b) = (next, next + 1);
            next += 2;
            edges.push((prev, a));
            edges.push((a, b));
            edges.extend(chunk.iter().map(|&q| (b, q)));
            merges.push(Merge { cell: c, root: w, a, b });
            prev = b;
        }
    }
    SplitGraph { n_vertices: next, edges, whites, merges }
}

/// Bandwidth-reducing vertex order: BFS from a minimum-degree vertex of each
/// component, neighbors by increasing degree.
fn cuthill_mckee(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (deg[v], v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nb: Vec<usize> = adj[v].iter().copied().filter(|&u| !seen[u]).collect();
            nb.sort_by_key(|&u| (deg[u], u));
            for u in nb {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    order
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub vertex: usize,
    pub basis: Basis,
    pub rule: Rule,
}

/// Gates applied right after step `after`. Row `k` of `table` is used when
/// bit `i` of `k` is set exactly for the entries of `depends` whose outcome
/// was −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub after: usize,
    pub depends: Vec<usize>,
    pub table: Vec<Vec<(usize, Gate1)>>,
}

/// Step whose X outcome is the sign of a z-cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellMeasurement {
    pub step: usize,
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementPattern {
    pub width: usize,
    pub height: usize,
    pub steps: Vec<Step>,
    /// Grid vertex holding each code qubit.
    pub output_map: Vec<usize>,
    pub corrections: Vec<Correction>,
    pub cell_steps: Vec<CellMeasurement>,
    /// Grid vertices `(root, a, b)` and the z-cell of each merge.
    pub merges: Vec<(usize, usize, usize, usize)>,
    pub z_cells: Vec<Vec<usize>>,
    pub z_colors: Option<Vec<u8>>,
    pub excitation_policy: String,
}

pub const GREEDY_PAIR: &str = "greedy-pair";

impl MeasurementPattern {
    pub fn num_vertices(&self) -> usize {
        self.width * self.height
    }

    pub fn grid_edges(&self) -> Vec<(usize, usize)> {
        grid_edges(self.width, self.height)
    }

    /// Number of uniformizing merges applied to z-cell `cell`.
    pub fn merges_at(&self, cell: usize) -> usize {
        self.merges.iter().filter(|m| m.0 == cell).count()
    }

    pub fn count_rule(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }

    /// Structural checks: every non-output vertex measured once, outputs
    /// never, corrections reference earlier steps.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vertices();
        let mut seen = vec![0u8; n];
        for (i, s) in self.steps.iter().enumerate() {
            if s.vertex >= n {
                return Err(Error::InvalidCode(format!("step {i} names vertex {} outside the grid", s.vertex)));
            }
            seen[s.vertex] += 1;
        }
        for &o in &self.output_map {
            if o >= n || seen[o] != 0 {
                return Err(Error::InvalidCode(format!("output vertex {o} is measured or outside the grid")));
            }
            seen[o] = 2;
        }
        if let Some(v) = (0..n).find(|&v| seen[v] != 1 && seen[v] != 2) {
            return Err(Error::InvalidCode(format!("vertex {v} is measured {} times", seen[v])));
        }
        for c in &self.corrections {
            if c.after >= self.steps.len()
                || c.depends.iter().any(|&d| d > c.after)
                || c.table.len() != 1 << c.depends.len()
            {
                return Err(Error::InvalidCode(format!("malformed correction after step {}", c.after)));
            }
        }
        Ok(())
    }
}

pub(crate) fn grid_edges(w: usize, h: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(2 * w * h);
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                e.push((v, v + 1));
            }
            if y + 1 < h {
                e.push((v, v + w));
            }
        }
    }
    e
}

fn expected_basis(rule: Rule) -> Option<Basis> {
    match rule {
        Rule::FaceInsert | Rule::MeasureZ => Some(Basis::Z),
        Rule::LinkInsert | Rule::Flatten | Rule::MeasureY => Some(Basis::Y),
        Rule::Uniformize | Rule::MeasureX => Some(Basis::X),
        Rule::LocalComplement => None,
    }
}

fn closed_neighborhood(rep: &GraphStateRep, vs: &[usize]) -> Result<BTreeSet<usize>> {
    let mut region = BTreeSet::new();
    for &v in vs {
        region.insert(v);
        region.extend(rep.graph().neighbors(v)?.iter().copied());
    }
    Ok(region)
}

fn outcome_of_bits(k: usize, i: usize) -> i8 {
    if k >> i & 1 == 1 {
        -1
    } else {
        1
    }
}

struct Builder {
    steps: Vec<Step>,
    corrections: Vec<Correction>,
}

impl Builder {
    fn push(&mut self, vertex: usize, basis: Basis, rule: Rule) -> usize {
        self.steps.push(Step { vertex, basis, rule });
        self.steps.len() - 1
    }

    fn correct(&mut self, depends: Vec<usize>, table: Vec<Vec<(usize, Gate1)>>) {
        if table.iter().any(|r| !r.is_empty()) {
            let after = *depends.iter().max().unwrap();
            self.corrections.push(Correction { after, depends, table });
        }
    }
}

pub fn compile(code: &CssCode) -> Result<MeasurementPattern> {
    let report = code.validate();
    if !report.is_ok() {
        return Err(Error::InvalidCode(format!("{report:?}")));
    }
    let bip = cell_insertion(code);
    let split = split_whites(&bip, code);
    let order = cuthill_mckee(split.n_vertices, &split.edges);
    let lay = layout::layout(split.n_vertices, &split.edges, &order)?;
    let intended = lay.intended_edges();
    let induced = lay.induced_edges();
    if intended != induced {
        let extra: Vec<_> = induced.iter().filter(|e| intended.binary_search(e).is_err()).take(4).collect();
        return Err(Error::Embedding(format!("grid induces unintended edges, e.g. {extra:?}")));
    }
    let (w, h) = (lay.width, lay.height);
    let kept = lay.kept();
    let mut b = Builder { steps: Vec::new(), corrections: Vec::new() };

    // face insertion: every unused grid vertex
    for v in 0..w * h {
        if kept[v] {
            continue;
        }
        let s = b.push(v, Basis::Z, Rule::FaceInsert);
        let (x, y) = (v % w, v / w);
        let mut nb = Vec::new();
        if y > 0 {
            nb.push(v - w);
        }
        if x > 0 {
            nb.push(v - 1);
        }
        if x + 1 < w {
            nb.push(v + 1);
        }
        if y + 1 < h {
            nb.push(v + w);
        }
        let minus: Vec<(usize, Gate1)> =
            nb.into_iter().filter(|&u| kept[u] || u > v).map(|u| (u, Gate1::Z)).collect();
        b.correct(vec![s], vec![Vec::new(), minus]);
    }

    let mut kgraph = Graph::new();
    for v in (0..w * h).filter(|&v| kept[v]) {
        kgraph.add_vertex(v);
    }
    for &(a, c) in &induced {
        kgraph.add_edge(a, c)?;
    }
    let mut rep = GraphStateRep::new(kgraph);

    // crossings
    for g in &lay.gadgets {
        let mut local = rep.restricted(&closed_neighborhood(&rep, g)?);
        let mut plus = Vec::new();
        for &v in g {
            let s = b.push(v, Basis::Y, Rule::Flatten);
            let mut table = Vec::new();
            for o in [1, -1] {
                let mut l = local.clone();
                l.measure_y(v, o)?;
                table.push(l.flush());
            }
            local.measure_y(v, 1)?;
            local.flush();
            plus.extend(table[0].iter().copied());
            b.correct(vec![s], table);
        }
        let app = rep.flatten(g, &[1; 6])?;
        debug_assert_eq!(app.corrections, plus);
    }

    // link insertion along every wire
    for wire in &lay.wires {
        for &v in &wire.path {
            let s = b.push(v, Basis::Y, Rule::LinkInsert);
            let local = rep.restricted(&closed_neighborhood(&rep, &[v])?);
            let mut table = Vec::new();
            for o in [1, -1] {
                table.push(local.clone().link_insert(v, o)?.corrections);
            }
            let app = rep.link_insert(v, 1)?;
            debug_assert_eq!(app.corrections, table[0]);
            b.correct(vec![s], table);
        }
    }

    let pos = &lay.position;
    let mut want: Vec<(usize, usize)> = split
        .edges
        .iter()
        .map(|&(a, c)| (pos[a].min(pos[c]), pos[a].max(pos[c])))
        .collect();
    want.sort_unstable();
    if rep.graph().edges() != want {
        return Err(Error::Embedding("grid phase did not reproduce the split graph".into()));
    }

    // uniformizing merges
    let mut merges = Vec::new();
    for m in &split.merges {
        let (root, a, c) = (pos[m.root], pos[m.a], pos[m.b]);
        let region = closed_neighborhood(&rep, &[root, a, c])?;
        let local = rep.restricted(&region);
        let sa = b.push(a, Basis::X, Rule::Uniformize);
        let sb = b.push(c, Basis::X, Rule::Uniformize);
        let mut table = Vec::new();
        for k in 0..4 {
            let os = (outcome_of_bits(k, 0), outcome_of_bits(k, 1));
            table.push(local.clone().uniformize(a, c, os)?.corrections);
        }
        let app = rep.uniformize(a, c, (1, 1))?;
        debug_assert_eq!(app.corrections, table[0]);
        b.correct(vec![sa, sb], table);
        merges.push((m.cell, root, a, c));
    }

    // cell measurements
    let mut cell_steps = Vec::new();
    for &(v, cell) in &split.whites {
        let v = pos[v];
        let nb: Vec<usize> = rep.graph().neighbors(v)?.iter().copied().collect();
        let want: Vec<usize> = code.z_cells[cell].iter().map(|&q| pos[q]).collect::<BTreeSet<_>>().into_iter().collect();
        if nb != want {
            return Err(Error::Embedding(format!("white of cell {cell} is not attached to its qubits")));
        }
        let s = b.push(v, Basis::X, Rule::MeasureX);
        cell_steps.push(CellMeasurement { step: s, cell });
    }

    let pattern = MeasurementPattern {
        width: w,
        height: h,
        steps: b.steps,
        output_map: pos[..code.n].to_vec(),
        corrections: b.corrections,
        cell_steps,
        merges,
        z_cells: code.z_cells.clone(),
        z_colors: code.z_colors.clone(),
        excitation_policy: GREEDY_PAIR.into(),
    };
    pattern.validate()?;
    Ok(pattern)
}

/// Steps whose basis disagrees with their rule, as `(step, message)`.
pub fn basis_mismatches(p: &MeasurementPattern) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    for (i, s) in p.steps.iter().enumerate() {
        if let Some(want) = expected_basis(s.rule) {
            if want != s.basis {
                out.push((i, format!("step {i} (vertex {}): basis {} but rule {:?} needs {}", s.vertex, s.basis, s.rule, want)));
            }
        }
    }
    out
}

/// Map from step index to the correction entries fired after it.
pub(crate) fn corrections_by_step(p: &MeasurementPattern) -> BTreeMap<usize, Vec<usize>> {
    let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in p.corrections.iter().enumerate() {
        m.entry(c.after).or_default().push(i);
    }
    m
}
