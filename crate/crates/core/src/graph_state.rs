//! Graph states with pending local-Clifford byproducts, and the Pauli
//! measurement rules as graph rewrites.
//!
//! The represented state is `(⊗_v B_v) |G⟩`. Measuring a Pauli on vertex `v`
//! is translated through `B_v` into an `X`, `Y` or `Z` measurement on `|G⟩`,
//! which maps to a new graph and new byproducts on the neighborhood.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::local::{Gate1, LocalClifford};
use crate::pauli::{Pauli1, PauliString};
use crate::tableau::StabilizerTableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub fn pauli(self) -> Pauli1 {
        match self {
            Basis::X => Pauli1::X,
            Basis::Y => Pauli1::Y,
            Basis::Z => Pauli1::Z,
        }
    }

    pub fn from_pauli(p: Pauli1) -> Option<Basis> {
        match p {
            Pauli1::X => Some(Basis::X),
            Pauli1::Y => Some(Basis::Y),
            Pauli1::Z => Some(Basis::Z),
            Pauli1::I => None,
        }
    }

    pub fn from_char(c: char) -> Option<Basis> {
        Basis::from_pauli(Pauli1::from_char(c)?)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pauli().to_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Uniformize,
    FaceInsert,
    LinkInsert,
    Flatten,
    LocalComplement,
    MeasureX,
    MeasureY,
    MeasureZ,
}

/// One or more measurements applied as a unit. `corrections` lists the gates
/// physically applied afterwards (empty for raw measurements, whose
/// byproducts stay pending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: Rule,
    pub touched: Vec<usize>,
    pub corrections: Vec<(usize, Gate1)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphStateRep {
    graph: Graph,
    byproducts: BTreeMap<usize, LocalClifford>,
    record: BTreeMap<usize, i8>,
}

impl GraphStateRep {
    pub fn new(graph: Graph) -> Self {
        GraphStateRep { graph, byproducts: BTreeMap::new(), record: BTreeMap::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn byproduct(&self, v: usize) -> LocalClifford {
        self.byproducts.get(&v).copied().unwrap_or_default()
    }

    pub fn byproducts(&self) -> &BTreeMap<usize, LocalClifford> {
        &self.byproducts
    }

    pub fn record(&self) -> &BTreeMap<usize, i8> {
        &self.record
    }

    pub fn has_pending(&self) -> bool {
        !self.byproducts.is_empty()
    }

    /// Post-compose `u` onto the byproduct of `v`: the state becomes `u_v · state`.
    pub fn apply_local(&mut self, v: usize, u: LocalClifford) {
        let b = self.byproduct(v).then(&u);
        self.set_byproduct(v, b);
    }

    fn set_byproduct(&mut self, v: usize, b: LocalClifford) {
        if b.is_identity() {
            self.byproducts.remove(&v);
        } else {
            self.byproducts.insert(v, b);
        }
    }

    /// Pre-compose `u` under the byproduct: `B_v ← B_v · u`.
    fn push_under(&mut self, v: usize, u: LocalClifford) {
        let b = u.then(&self.byproduct(v));
        self.set_byproduct(v, b);
    }

    /// Copy of the state restricted to the induced subgraph on `region`.
    /// Rules confined to `region` act on the copy exactly as on `self`.
    pub fn restricted(&self, region: &BTreeSet<usize>) -> GraphStateRep {
        let byproducts = self.byproducts.iter().filter(|(v, _)| region.contains(v)).map(|(&v, &b)| (v, b)).collect();
        let mut graph = Graph::new();
        for &v in region {
            if let Ok(nb) = self.graph.neighbors(v) {
                graph.add_vertex(v);
                for &u in nb.iter().filter(|u| region.contains(u)) {
                    graph.add_vertex(u);
                    graph.add_edge(v, u).expect("distinct vertices");
                }
            }
        }
        GraphStateRep { graph, byproducts, record: BTreeMap::new() }
    }

    /// Qubit order used by [`to_tableau`](Self::to_tableau): sorted vertex ids.
    pub fn qubit_order(&self) -> Vec<usize> {
        self.graph.vertices().collect()
    }

    /// Generators `B (X_a ∏_{N(a)} Z_b) B†`, one per vertex in sorted order.
    pub fn to_tableau(&self) -> StabilizerTableau {
        let order = self.qubit_order();
        let index: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = order.len();
        let mut gens = Vec::with_capacity(n);
        for (i, &v) in order.iter().enumerate() {
            let mut s = PauliString::single(n, i, Pauli1::X);
            for u in self.graph.neighbors(v).expect("vertex") {
                s.set(index[u], Pauli1::Z);
            }
            for (&w, b) in &self.byproducts {
                b.conjugate_at(&mut s, index[&w]);
            }
            gens.push(s);
        }
        StabilizerTableau::from_parts(n, gens)
    }

    /// Outcome of measuring `basis` on `v` when it is fixed by the state.
    pub fn deterministic_outcome(&self, v: usize, basis: Basis) -> Result<Option<i8>> {
        let nb = self.graph.neighbors(v)?;
        let (q, s) = self.byproduct(v).preimage(basis.pauli());
        Ok((q == Pauli1::X && nb.is_empty()).then_some(s))
    }

    /// Measure `basis` on `v` with the given physical outcome. Byproducts are
    /// left pending.
    pub fn measure(
        &mut self,
        v: usize,
        basis: Basis,
        outcome: i8,
        special: Option<usize>,
    ) -> Result<RuleApplication> {
        let nb: Vec<usize> = self.graph.neighbors(v)?.iter().copied().collect();
        let (q, s) = self.byproduct(v).preimage(basis.pauli());
        let o = outcome * s;
        let rule = match basis {
            Basis::X => Rule::MeasureX,
            Basis::Y => Rule::MeasureY,
            Basis::Z => Rule::MeasureZ,
        };
        if let Some(b) = special {
            if !nb.contains(&b) {
                return Err(Error::NotAdjacent(v, b));
            }
        }
        let mut touched = nb.clone();
        match q {
            Pauli1::Z => {
                self.graph.remove_vertex(v)?;
                if o < 0 {
                    for &b in &nb {
                        self.push_under(b, LocalClifford::pauli(Pauli1::Z));
                    }
                }
            }
            Pauli1::Y => {
                self.graph.local_complement(v)?;
                self.graph.remove_vertex(v)?;
                let u = if o > 0 { LocalClifford::SQRT_MINUS_IZ } else { LocalClifford::SQRT_PLUS_IZ };
                for &b in &nb {
                    self.push_under(b, u);
                }
            }
            Pauli1::X => {
                if nb.is_empty() {
                    if o < 0 {
                        return Err(Error::Contradiction { forced: outcome, actual: s });
                    }
                    self.graph.remove_vertex(v)?;
                } else {
                    let b0 = special.unwrap_or(nb[0]);
                    let na: BTreeSet<usize> = nb.iter().copied().collect();
                    let nb0: BTreeSet<usize> = self.graph.neighbors(b0)?.clone();
                    self.graph.local_complement(b0)?;
                    self.graph.local_complement(v)?;
                    self.graph.local_complement(b0)?;
                    self.graph.remove_vertex(v)?;
                    if o > 0 {
                        self.push_under(b0, LocalClifford::SQRT_PLUS_IY);
                        for &c in na.iter().filter(|c| !nb0.contains(c) && **c != b0) {
                            self.push_under(c, LocalClifford::pauli(Pauli1::Z));
                        }
                    } else {
                        self.push_under(b0, LocalClifford::SQRT_MINUS_IY);
                        for &c in nb0.iter().filter(|c| !na.contains(c) && **c != v) {
                            self.push_under(c, LocalClifford::pauli(Pauli1::Z));
                        }
                    }
                    touched = na.union(&nb0).copied().filter(|&c| c != v).collect();
                }
            }
            Pauli1::I => unreachable!(),
        }
        self.byproducts.remove(&v);
        self.record.insert(v, outcome);
        touched.insert(0, v);
        Ok(RuleApplication { rule, touched, corrections: Vec::new() })
    }

    pub fn measure_x(&mut self, v: usize, outcome: i8, special: Option<usize>) -> Result<RuleApplication> {
        self.measure(v, Basis::X, outcome, special)
    }

    pub fn measure_y(&mut self, v: usize, outcome: i8) -> Result<RuleApplication> {
        self.measure(v, Basis::Y, outcome, None)
    }

    pub fn measure_z(&mut self, v: usize, outcome: i8) -> Result<RuleApplication> {
        self.measure(v, Basis::Z, outcome, None)
    }

    /// Physically undo every pending byproduct; returns the gates applied.
    pub fn flush(&mut self) -> Vec<(usize, Gate1)> {
        let mut out = Vec::new();
        for (v, b) in core::mem::take(&mut self.byproducts) {
            out.extend(b.inverse().gates().into_iter().map(|g| (v, g)));
        }
        out
    }

    /// Replace `G` by `τ_v(G)` while keeping the physical state fixed.
    pub fn local_complement(&mut self, v: usize) -> Result<RuleApplication> {
        let nb: Vec<usize> = self.graph.neighbors(v)?.iter().copied().collect();
        self.graph.local_complement(v)?;
        // |τ_v G⟩ = √(-iX_v) ∏ √(+iZ_b) |G⟩
        let sqrt_minus_ix = LocalClifford::new(
            crate::local::SignedPauli::plus(Pauli1::X),
            crate::local::SignedPauli::minus(Pauli1::Y),
        )
        .unwrap();
        self.push_under(v, sqrt_minus_ix.inverse());
        for &b in &nb {
            self.push_under(b, LocalClifford::SQRT_PLUS_IZ.inverse());
        }
        let mut touched = nb;
        touched.insert(0, v);
        Ok(RuleApplication { rule: Rule::LocalComplement, touched, corrections: Vec::new() })
    }

    fn measure_flush(
        &mut self,
        v: usize,
        basis: Basis,
        outcome: i8,
        special: Option<usize>,
        app: &mut RuleApplication,
    ) -> Result<()> {
        let step = self.measure(v, basis, outcome, special)?;
        for t in step.touched {
            if !app.touched.contains(&t) {
                app.touched.push(t);
            }
        }
        app.corrections.extend(self.flush());
        Ok(())
    }

    fn require_clean(&self, vs: &[usize]) -> Result<()> {
        for &v in vs {
            if !self.byproduct(v).is_identity() {
                return Err(Error::Precondition(format!("vertex {v} carries a pending byproduct")));
            }
        }
        Ok(())
    }

    /// Z-measure `v` and apply the corrections.
    pub fn face_insert(&mut self, v: usize, outcome: i8) -> Result<RuleApplication> {
        self.require_clean(&[v])?;
        let mut app = RuleApplication { rule: Rule::FaceInsert, touched: Vec::new(), corrections: Vec::new() };
        self.measure_flush(v, Basis::Z, outcome, None, &mut app)?;
        Ok(app)
    }

    /// Y-measure a subdivision vertex `a – v – b` (with `a`, `b` non-adjacent),
    /// leaving the edge `a – b`.
    pub fn link_insert(&mut self, v: usize, outcome: i8) -> Result<RuleApplication> {
        self.require_clean(&[v])?;
        let nb: Vec<usize> = self.graph.neighbors(v)?.iter().copied().collect();
        if nb.len() != 2 || self.graph.has_edge(nb[0], nb[1]) {
            return Err(Error::Precondition(format!("vertex {v} is not a subdivision vertex")));
        }
        let mut app = RuleApplication { rule: Rule::LinkInsert, touched: Vec::new(), corrections: Vec::new() };
        self.measure_flush(v, Basis::Y, outcome, None, &mut app)?;
        Ok(app)
    }

    /// Merge through the path `c – a – b`: X-measure `a` (special neighbor
    /// `b`) then `b`, then correct. Afterwards `c` is adjacent to the former
    /// neighbors of `b`; the correction is a Pauli layer.
    pub fn uniformize(&mut self, a: usize, b: usize, outcomes: (i8, i8)) -> Result<RuleApplication> {
        self.require_clean(&[a, b])?;
        let na = self.graph.neighbors(a)?.clone();
        if na.len() != 2 || !na.contains(&b) {
            return Err(Error::Precondition(format!("vertex {a} must have degree 2 and neighbor {b}")));
        }
        let c = *na.iter().find(|&&x| x != b).unwrap();
        let nb = self.graph.neighbors(b)?;
        let nc = self.graph.neighbors(c)?;
        if nb.iter().any(|&x| x != a && (x == c || nc.contains(&x))) {
            return Err(Error::Precondition(format!("neighbors of {b} overlap the closed neighborhood of {c}")));
        }
        let first = self.measure(a, Basis::X, outcomes.0, Some(b))?;
        // `b` now hangs off `c` carrying a √(±iY) byproduct, so its X
        // measurement acts as Z in the graph frame and only detaches it.
        self.measure(b, Basis::X, outcomes.1, Some(c))?;
        let corrections = self.flush();
        Ok(RuleApplication { rule: Rule::Uniformize, touched: first.touched, corrections })
    }

    /// Y-measure the crossing gadget in order, correcting after each step.
    /// `gadget` lists a 2×3 block column-major: `(0,0) (0,1) (0,2) (1,0)
    /// (1,1) (1,2)`. Terminals attach above `(0,0)`, right of `(1,0)`, below
    /// `(1,2)` and left of `(0,2)`; afterwards top–bottom and left–right are
    /// joined.
    pub fn flatten(&mut self, gadget: &[usize], outcomes: &[i8]) -> Result<RuleApplication> {
        check_flatten_gadget(&self.graph, gadget)?;
        if outcomes.len() != gadget.len() {
            return Err(Error::Precondition(format!("expected {} outcomes", gadget.len())));
        }
        self.require_clean(gadget)?;
        let mut app = RuleApplication { rule: Rule::Flatten, touched: Vec::new(), corrections: Vec::new() };
        for (&v, &o) in gadget.iter().zip(outcomes) {
            self.measure_flush(v, Basis::Y, o, None, &mut app)?;
        }
        Ok(app)
    }
}

/// Expected internal edges of the crossing gadget, as index pairs into the
/// column-major 2×3 block.
const GADGET_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)];
/// Gadget positions allowed one external neighbor.
const GADGET_PORTS: [usize; 4] = [0, 3, 5, 2];

fn check_flatten_gadget(g: &Graph, gadget: &[usize]) -> Result<()> {
    let bad = |why: &str| Err(Error::Precondition(format!("malformed crossing gadget: {why}")));
    if gadget.len() != 6 {
        return bad("need six vertices");
    }
    let set: BTreeSet<usize> = gadget.iter().copied().collect();
    if set.len() != 6 {
        return bad("repeated vertex");
    }
    for i in 0..6 {
        for j in i + 1..6 {
            let want = GADGET_EDGES.contains(&(i, j));
            if g.has_edge(gadget[i], gadget[j]) != want {
                return bad("internal edges do not form a 2x3 grid");
            }
        }
        let external = g.neighbors(gadget[i])?.iter().filter(|u| !set.contains(u)).count();
        let allowed = usize::from(GADGET_PORTS.contains(&i));
        if external > allowed {
            return bad("extra external edges");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(n: usize, edges: &[(usize, usize)]) -> GraphStateRep {
        GraphStateRep::new(Graph::from_edges(n, edges).unwrap())
    }

    #[test]
    fn tableau_shapes() {
        let t = rep(3, &[]).to_tableau();
        assert_eq!(t, StabilizerTableau::plus_state(3));
        let t = rep(3, &[(0, 1), (1, 2)]).to_tableau();
        let lits: Vec<_> = t.generators().iter().map(|g| alloc::string::ToString::to_string(g)).collect();
        assert_eq!(lits, ["+XZI", "+ZXZ", "+IZX"]);
        let star = rep(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).to_tableau();
        assert_eq!(alloc::string::ToString::to_string(&star.generators()[0]), "+XZZZZ");
    }

    #[test]
    fn z_on_star_center_with_minus() {
        let mut g = rep(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        g.measure_z(0, -1).unwrap();
        assert_eq!(g.graph().num_edges(), 0);
        for v in 1..5 {
            assert_eq!(g.byproduct(v), LocalClifford::pauli(Pauli1::Z));
        }
    }

    #[test]
    fn isolated_x_is_deterministic() {
        let mut g = rep(1, &[]);
        assert_eq!(g.deterministic_outcome(0, Basis::X).unwrap(), Some(1));
        assert!(matches!(g.clone().measure_x(0, -1, None), Err(Error::Contradiction { .. })));
        g.measure_x(0, 1, None).unwrap();
        assert_eq!(g.graph().num_vertices(), 0);
    }

    #[test]
    fn special_neighbor_must_be_adjacent() {
        let mut g = rep(3, &[(0, 1)]);
        assert!(matches!(g.measure_x(0, 1, Some(2)), Err(Error::NotAdjacent(0, 2))));
        assert!(matches!(g.measure_z(9, 1), Err(Error::MissingVertex(9))));
    }
}
