//! Twist defects on the chessboard picture of the 2D toric code.
//!
//! Plaquettes (z-cells) are light and vertices (x-cells) are dark. Measuring
//! `Y` on a bulk qubit fuses its light and dark neighbours into a pair of
//! twists; further `Y` measurements drag one twist along and leave a cut of
//! measured qubits behind.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{BitMatrix, BitVec};
use crate::codes::{build_toric_2d, CssCode, Topology};
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliString, Phase};
use crate::tableau::StabilizerTableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaquetteColor {
    /// Z-type plaquette; excitations are charges.
    Light,
    /// X-type plaquette; excitations are fluxes.
    Dark,
}

#[derive(Clone, Debug)]
pub struct ChessLattice {
    pub code: CssCode,
    /// Light cells first, then dark.
    cells: Vec<Vec<usize>>,
    lights: usize,
    cells_of: Vec<Vec<usize>>,
}

/// A bulk qubit `c` with its two light plaquettes `b_p`, `b_p2`, two dark
/// plaquettes `a_s`, `a_s2` and neighbours `q[1..=8]`:
/// `1 = b_p∩a_s`, `2 = b_p∩a_s2`, `3` the rest of `b_p`, `4 = b_p2∩a_s`,
/// `6 = b_p2∩a_s2`, `5` the rest of `b_p2`, `7` the rest of `a_s2` and `8`
/// the rest of `a_s`. `q[0] = c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistSite {
    pub b_p: usize,
    pub b_p2: usize,
    pub a_s: usize,
    pub a_s2: usize,
    pub q: [usize; 9],
}

impl ChessLattice {
    pub fn new(code: CssCode) -> Self {
        let lights = code.z_cells.len();
        let cells: Vec<Vec<usize>> = code.z_cells.iter().chain(code.x_cells.iter()).cloned().collect();
        let mut cells_of = vec![Vec::new(); code.n];
        for (i, c) in cells.iter().enumerate() {
            for &q in c {
                cells_of[q].push(i);
            }
        }
        ChessLattice { code, cells, lights, cells_of }
    }

    pub fn torus(l: usize) -> Result<Self> {
        if l < 3 {
            return Err(Error::InvalidCode(format!("twist lattice needs L >= 3, got {l}")));
        }
        Ok(Self::new(build_toric_2d(l, Topology::Torus, &[])?))
    }

    pub fn planar(l: usize) -> Result<Self> {
        Ok(Self::new(build_toric_2d(l, Topology::Planar, &[])?))
    }

    pub fn n(&self) -> usize {
        self.code.n
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn color(&self, cell: usize) -> PlaquetteColor {
        if cell < self.lights {
            PlaquetteColor::Light
        } else {
            PlaquetteColor::Dark
        }
    }

    pub fn cell(&self, cell: usize) -> &[usize] {
        &self.cells[cell]
    }

    pub fn cells_of(&self, q: usize) -> &[usize] {
        &self.cells_of[q]
    }

    /// Stabilizer of a cell: `Z` on light cells, `X` on dark ones.
    pub fn operator(&self, cell: usize) -> PauliString {
        match self.color(cell) {
            PlaquetteColor::Light => PauliString::z_type(self.n(), self.cells[cell].iter().copied()),
            PlaquetteColor::Dark => PauliString::x_type(self.n(), self.cells[cell].iter().copied()),
        }
    }

    /// Ordered product of cell stabilizers.
    pub fn product(&self, cells: &[usize]) -> PauliString {
        let mut p = PauliString::identity(self.n());
        for &c in cells {
            p.mul_assign(&self.operator(c));
        }
        p
    }

    pub fn site(&self, c: usize) -> Result<TwistSite> {
        if c >= self.n() {
            return Err(Error::OutOfRange { index: c, n: self.n() });
        }
        let bad = || Error::UnsupportedLocation(c);
        let full = |color| -> Vec<usize> {
            self.cells_of[c].iter().copied().filter(|&k| self.color(k) == color && self.cells[k].len() == 4).collect()
        };
        let (lights, darks) = (full(PlaquetteColor::Light), full(PlaquetteColor::Dark));
        if lights.len() != 2 || darks.len() != 2 || self.cells_of[c].len() != 4 {
            return Err(bad());
        }
        let set = |k: usize| -> BTreeSet<usize> { self.cells[k].iter().copied().filter(|&q| q != c).collect() };
        let (bp, bp2, as1, as2) = (set(lights[0]), set(lights[1]), set(darks[0]), set(darks[1]));
        let one = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| -> Result<usize> {
            let mut it = a.intersection(b);
            match (it.next(), it.next()) {
                (Some(&q), None) => Ok(q),
                _ => Err(bad()),
            }
        };
        let rest = |a: &BTreeSet<usize>, x: usize, y: usize| -> Result<usize> {
            let r: Vec<usize> = a.iter().copied().filter(|&q| q != x && q != y).collect();
            if r.len() == 1 {
                Ok(r[0])
            } else {
                Err(bad())
            }
        };
        let q1 = one(&bp, &as1)?;
        let q2 = one(&bp, &as2)?;
        let q4 = one(&bp2, &as1)?;
        let q6 = one(&bp2, &as2)?;
        let q = [c, q1, q2, rest(&bp, q1, q2)?, q4, rest(&bp2, q4, q6)?, q6, rest(&as2, q2, q6)?, rest(&as1, q1, q4)?];
        if q.iter().collect::<BTreeSet<_>>().len() != 9 {
            return Err(bad());
        }
        Ok(TwistSite { b_p: lights[0], b_p2: lights[1], a_s: darks[0], a_s2: darks[1], q })
    }
}

/// One end of the cut: the fused light and dark cells and their product
/// with the measured qubits removed, signed so that it is a stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub light: usize,
    pub dark: usize,
    pub generator: PauliString,
}

#[derive(Clone, Debug)]
pub struct TwistPair {
    pub lattice: ChessLattice,
    pub site: TwistSite,
    /// State of all `n` qubits; measured qubits stay in their `Y` eigenstate.
    pub host: StabilizerTableau,
    /// Measured qubits in order, with outcomes.
    pub cut: Vec<(usize, i8)>,
    pub twists: [Twist; 2],
}

fn check_outcome(o: i8) -> Result<()> {
    if o == 1 || o == -1 {
        Ok(())
    } else {
        Err(Error::Precondition(format!("outcome must be +1 or -1, got {o}")))
    }
}

fn measure_y(host: &mut StabilizerTableau, q: usize, outcome: i8) -> Result<()> {
    let y = PauliString::single(host.n(), q, Pauli1::Y);
    let mut rng = crate::rng_from_seed(0);
    host.measure(&y, Some(outcome), &mut rng)?;
    Ok(())
}

/// Measure `Y_c` on the code state and fuse the cells of `c` into two twists:
/// `G` from `b_p·a_s` and `Ĝ` from `b_p2·a_s2`.
pub fn create_twists(lattice: &ChessLattice, c: usize, outcome: i8) -> Result<TwistPair> {
    check_outcome(outcome)?;
    let site = lattice.site(c)?;
    let mut host = lattice.code.code_state()?;
    measure_y(&mut host, c, outcome)?;
    let mut pair = TwistPair {
        lattice: lattice.clone(),
        site,
        host,
        cut: vec![(c, outcome)],
        twists: [
            Twist { light: site.b_p, dark: site.a_s, generator: PauliString::identity(lattice.n()) },
            Twist { light: site.b_p2, dark: site.a_s2, generator: PauliString::identity(lattice.n()) },
        ],
    };
    for k in 0..2 {
        let t = &pair.twists[k];
        pair.twists[k].generator = pair.fused_generator(t.light, t.dark)?;
    }
    Ok(pair)
}

impl TwistPair {
    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    pub fn is_measured(&self, q: usize) -> bool {
        self.cut.iter().any(|&(m, _)| m == q)
    }

    pub fn cut_qubits(&self) -> Vec<usize> {
        self.cut.iter().map(|&(q, _)| q).collect()
    }

    pub fn g(&self) -> &PauliString {
        &self.twists[0].generator
    }

    pub fn g_hat(&self) -> &PauliString {
        &self.twists[1].generator
    }

    /// `p` with measured qubits set to identity and the sign fixed by the host.
    /// Fails when neither sign is a stabilizer.
    pub fn stabilizer_from(&self, p: &PauliString) -> Result<PauliString> {
        let mut r = p.clone().with_phase(Phase::ONE);
        for &(q, _) in &self.cut {
            r.set(q, Pauli1::I);
        }
        match self.host.contains(&r) {
            Some(s) if s.is_real() => Ok(r.times_phase(s)),
            _ => Err(Error::Precondition(format!("{r} is not a stabilizer of the host"))),
        }
    }

    fn fused_generator(&self, light: usize, dark: usize) -> Result<PauliString> {
        self.stabilizer_from(&self.lattice.product(&[light, dark]))
    }

    /// `b_p·a_s` (or `b_p2·a_s2`) for the current ends, including the measured
    /// qubits. This has eigenvalue `+1` whatever the outcomes were.
    pub fn full_generator(&self, k: usize) -> PauliString {
        self.lattice.product(&[self.twists[k].light, self.twists[k].dark])
    }

    pub fn touches_cut(&self, cell: usize) -> bool {
        self.lattice.cell(cell).iter().any(|&q| self.is_measured(q))
    }

    /// Original plaquettes untouched by the cut.
    pub fn checks(&self) -> Vec<usize> {
        (0..self.lattice.num_cells()).filter(|&c| !self.touches_cut(c)).collect()
    }

    pub fn defect_cells(&self) -> Vec<usize> {
        (0..self.lattice.num_cells()).filter(|&c| self.touches_cut(c)).collect()
    }

    /// Whether the product of `cells` commutes with every measured `Y`.
    fn compatible(&self, cells: &[usize]) -> bool {
        self.cut.iter().all(|&(m, _)| cells.iter().filter(|&&c| self.lattice.cell(c).contains(&m)).count() % 2 == 0)
    }

    /// Light/dark pairs on the cut whose product survives the measurements.
    /// Both twists are among them.
    pub fn fused_pairs(&self) -> Vec<(usize, usize)> {
        let defect = self.defect_cells();
        let mut out = Vec::new();
        for &p in defect.iter().filter(|&&c| self.lattice.color(c) == PlaquetteColor::Light) {
            for &d in defect.iter().filter(|&&c| self.lattice.color(c) == PlaquetteColor::Dark) {
                if self.compatible(&[p, d]) {
                    out.push((p, d));
                }
            }
        }
        out
    }

    /// Generators of the products of cut cells that survive the measurements,
    /// with measured qubits removed and signs from the host.
    pub fn defect_generators(&self) -> Result<Vec<PauliString>> {
        let defect = self.defect_cells();
        let rows: Vec<BitVec> = self
            .cut
            .iter()
            .map(|&(m, _)| BitVec::from_indices(defect.len(), (0..defect.len()).filter(|&i| self.lattice.cell(defect[i]).contains(&m))))
            .collect();
        BitMatrix::from_rows(defect.len(), rows)
            .nullspace()
            .into_iter()
            .map(|v| {
                let cells: Vec<usize> = v.ones().map(|i| defect[i]).collect();
                self.stabilizer_from(&self.lattice.product(&cells))
            })
            .collect()
    }

    /// Host with the measured qubits discarded.
    pub fn remaining(&self) -> Result<StabilizerTableau> {
        let mut t = self.host.clone();
        let mut qs = self.cut_qubits();
        qs.sort_unstable_by(|a, b| b.cmp(a));
        for q in qs {
            t.discard_qubit(q)?;
        }
        Ok(t)
    }
}

/// Measure `Y_q` next to one twist, moving that twist onto the two fresh
/// cells of `q`.
pub fn transport_twist(pair: &TwistPair, q: usize, outcome: i8) -> Result<TwistPair> {
    check_outcome(outcome)?;
    if q >= pair.n() {
        return Err(Error::OutOfRange { index: q, n: pair.n() });
    }
    if pair.is_measured(q) {
        return Err(Error::AlreadyMeasured(q));
    }
    let tips: Vec<usize> = (0..2).filter(|&k| pair.twists[k].generator.get(q) == Pauli1::Y).collect();
    let near: Vec<usize> = (0..2).filter(|&k| pair.twists[k].generator.get(q) != Pauli1::I).collect();
    let k = match (tips.as_slice(), near.as_slice()) {
        ([k], _) | ([], [k]) => *k,
        _ => return Err(Error::Precondition(format!("qubit {q} is not next to exactly one twist"))),
    };
    let fresh: Vec<usize> = pair.lattice.cells_of(q).iter().copied().filter(|&c| !pair.touches_cut(c)).collect();
    let light: Vec<usize> = fresh.iter().copied().filter(|&c| pair.lattice.color(c) == PlaquetteColor::Light).collect();
    let dark: Vec<usize> = fresh.iter().copied().filter(|&c| pair.lattice.color(c) == PlaquetteColor::Dark).collect();
    if light.len() != 1 || dark.len() != 1 {
        return Err(Error::Precondition(format!("qubit {q} has no single fresh light and dark plaquette")));
    }
    let mut next = pair.clone();
    measure_y(&mut next.host, q, outcome)?;
    next.cut.push((q, outcome));
    let generator = next.fused_generator(light[0], dark[0])?;
    next.twists[k] = Twist { light: light[0], dark: dark[0], generator };
    Ok(next)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopKind {
    /// Closed `X` string.
    E,
    /// Closed `Z` string.
    M,
    /// `X` part times `Z` part of a closed composite string.
    Eps,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopOperator {
    pub kind: LoopKind,
    pub operator: PauliString,
    /// Cells whose boundary the loop follows.
    pub region: Vec<usize>,
}

/// `region` plus every check sharing an unmeasured qubit with it.
fn grow(pair: &TwistPair, region: &[usize]) -> Vec<usize> {
    let mut out: BTreeSet<usize> = region.iter().copied().collect();
    for &c in region {
        for &q in pair.lattice.cell(c) {
            if pair.is_measured(q) {
                continue;
            }
            for &d in pair.lattice.cells_of(q) {
                if !pair.touches_cut(d) {
                    out.insert(d);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn eps_from_product(n: usize, h: &PauliString) -> PauliString {
    let mut l = PauliString::x_type(n, h.x_bits().ones());
    l.mul_assign(&PauliString::z_type(n, h.z_bits().ones()));
    l
}

/// `L_ε` around twist `k`: boundary of the twist cells and their neighbouring
/// checks, written as (X part)·(Z part). It is anti-Hermitian.
pub fn eps_loop(pair: &TwistPair, k: usize) -> Result<LoopOperator> {
    if k > 1 {
        return Err(Error::OutOfRange { index: k, n: 2 });
    }
    let region = grow(pair, &[pair.twists[k].light, pair.twists[k].dark]);
    let mut h = pair.lattice.product(&region);
    for q in pair.cut_qubits() {
        h.set(q, Pauli1::I);
    }
    Ok(LoopOperator { kind: LoopKind::Eps, operator: eps_from_product(pair.n(), &h), region })
}

/// `(L_e, L_m)` following the boundary of every cut cell plus neighbouring
/// checks, so both twists are inside.
pub fn pair_loops(pair: &TwistPair) -> (LoopOperator, LoopOperator) {
    let region = grow(pair, &pair.defect_cells());
    let dark: Vec<usize> = region.iter().copied().filter(|&c| pair.lattice.color(c) == PlaquetteColor::Dark).collect();
    let light: Vec<usize> = region.iter().copied().filter(|&c| pair.lattice.color(c) == PlaquetteColor::Light).collect();
    let e = pair.lattice.product(&dark).with_phase(Phase::ONE);
    let m = pair.lattice.product(&light).with_phase(Phase::ONE);
    (
        LoopOperator { kind: LoopKind::E, operator: e, region: region.clone() },
        LoopOperator { kind: LoopKind::M, operator: m, region },
    )
}

/// Eigenvalue of the loop on the host, `None` when it is not fixed. For an
/// `ε` loop the answer is `±i`.
pub fn wind(pair: &TwistPair, l: &LoopOperator) -> Result<Option<Phase>> {
    if l.operator.n() != pair.n() {
        return Err(Error::Size { expected: pair.n(), got: l.operator.n() });
    }
    if let Some(q) = l.operator.support().into_iter().find(|&q| pair.is_measured(q)) {
        return Err(Error::LoopOnCut(q));
    }
    Ok(pair.host.contains(&l.operator).map(Phase::conj))
}

/// Endpoints of an open string and whether it stays clear of the cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringReport {
    pub operator: PauliString,
    pub crossings: usize,
    pub light_endpoints: Vec<usize>,
    pub dark_endpoints: Vec<usize>,
    /// Commutes with every fused pair on the cut, twists included.
    pub commutes_with_defects: bool,
    /// Anticommutes with `L_e` or `L_m` around both twists, so it changes
    /// the charge they enclose.
    pub flips_channel: bool,
}

impl StringReport {
    pub fn is_mixed(&self) -> bool {
        self.light_endpoints.len() == 1 && self.dark_endpoints.len() == 1
    }

    pub fn is_same_type(&self) -> bool {
        (self.light_endpoints.len() == 2 && self.dark_endpoints.is_empty())
            || (self.dark_endpoints.len() == 2 && self.light_endpoints.is_empty())
    }
}

/// Checks violated by `op` and whether it commutes with the cut stabilizers.
pub fn string_syndrome(pair: &TwistPair, op: &PauliString, crossings: usize) -> Result<StringReport> {
    if let Some(q) = op.support().into_iter().find(|&q| pair.is_measured(q)) {
        return Err(Error::LoopOnCut(q));
    }
    let mut light = Vec::new();
    let mut dark = Vec::new();
    for c in pair.checks() {
        if !pair.lattice.operator(c).commutes(op) {
            match pair.lattice.color(c) {
                PlaquetteColor::Light => light.push(c),
                PlaquetteColor::Dark => dark.push(c),
            }
        }
    }
    let mut commutes = true;
    for (p, d) in pair.fused_pairs() {
        commutes &= pair.fused_generator(p, d)?.commutes(op);
    }
    let (le, lm) = pair_loops(pair);
    Ok(StringReport {
        operator: op.clone(),
        crossings,
        light_endpoints: light,
        dark_endpoints: dark,
        commutes_with_defects: commutes,
        flips_channel: !le.operator.commutes(op) || !lm.operator.commutes(op),
    })
}

/// Hops from `from` through checks of the same color to a cell accepted by
/// `goal`, never reusing a qubit in `used` or touching the cut. Returns the
/// end cell and the hop qubits.
fn route(
    pair: &TwistPair,
    from: usize,
    goal: impl Fn(usize) -> bool,
    used: &BTreeSet<usize>,
) -> Option<(usize, Vec<usize>)> {
    let color = pair.lattice.color(from);
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; pair.lattice.num_cells()];
    let mut seen = vec![false; pair.lattice.num_cells()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        for &q in pair.lattice.cell(c) {
            if pair.is_measured(q) || used.contains(&q) {
                continue;
            }
            for &d in pair.lattice.cells_of(q) {
                if seen[d] || pair.lattice.color(d) != color {
                    continue;
                }
                seen[d] = true;
                prev[d] = Some((c, q));
                if goal(d) {
                    let mut hops = Vec::new();
                    let mut at = d;
                    while let Some((p, h)) = prev[at] {
                        hops.push(h);
                        at = p;
                    }
                    hops.reverse();
                    return Some((d, hops));
                }
                if !pair.touches_cut(d) {
                    queue.push_back(d);
                }
            }
        }
    }
    None
}

fn hop_operator(pair: &TwistPair, color: PlaquetteColor, hops: &[usize]) -> PauliString {
    match color {
        PlaquetteColor::Light => PauliString::x_type(pair.n(), hops.iter().copied()),
        PlaquetteColor::Dark => PauliString::z_type(pair.n(), hops.iter().copied()),
    }
}

/// From fused light cell `p`, an `X` hop out to a light check; from fused
/// dark cell `d`, a `Z` hop out to a dark check.
fn leg(pair: &TwistPair, cell: usize, used: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let checks: BTreeSet<usize> = pair.checks().into_iter().collect();
    route(pair, cell, |d| checks.contains(&d), used).map(|(_, h)| h)
}

fn disjoint_union(a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    let mut s: BTreeSet<usize> = a.iter().copied().collect();
    for &q in b {
        if !s.insert(q) {
            return None;
        }
    }
    Some(s.into_iter().collect())
}

/// A string through `crossings` (0, 1 or 2) fused pairs of the cut.
pub fn crossing_string(pair: &TwistPair, crossings: usize) -> Result<StringReport> {
    // interior zips first, the twist ends last
    let ends = [(pair.twists[0].light, pair.twists[0].dark), (pair.twists[1].light, pair.twists[1].dark)];
    let (mut fused, tail): (Vec<_>, Vec<_>) = pair.fused_pairs().into_iter().partition(|f| !ends.contains(f));
    fused.extend(tail);
    let none = BTreeSet::new();
    let accept = |op: PauliString| -> Result<Option<StringReport>> {
        let r = string_syndrome(pair, &op, crossings)?;
        let ok = r.commutes_with_defects
            && match crossings {
                0 => r.is_same_type() && !r.flips_channel,
                1 => r.is_mixed(),
                _ => r.is_same_type(),
            };
        Ok(if ok { Some(r) } else { None })
    };
    match crossings {
        0 => {
            let checks = pair.checks();
            for &a in checks.iter().filter(|&&c| pair.lattice.color(c) == PlaquetteColor::Light) {
                let set: BTreeSet<usize> = checks.iter().copied().filter(|&c| c != a).collect();
                if let Some((_, hops)) = route(pair, a, |d| set.contains(&d), &none) {
                    if let Some(r) = accept(hop_operator(pair, PlaquetteColor::Light, &hops))? {
                        return Ok(r);
                    }
                }
            }
        }
        1 => {
            for &(p, d) in &fused {
                let (Some(xs), Some(zs)) = (leg(pair, p, &none), leg(pair, d, &none)) else { continue };
                if disjoint_union(&xs, &zs).is_none() {
                    continue;
                }
                let mut op = hop_operator(pair, PlaquetteColor::Light, &xs);
                op.mul_assign(&hop_operator(pair, PlaquetteColor::Dark, &zs));
                if let Some(r) = accept(op)? {
                    return Ok(r);
                }
            }
        }
        2 => {
            for (i, &(p1, d1)) in fused.iter().enumerate() {
                for &(p2, d2) in &fused[i + 1..] {
                    if p1 == p2 || d1 == d2 {
                        continue;
                    }
                    let Some(x1) = leg(pair, p1, &none) else { continue };
                    let used: BTreeSet<usize> = x1.iter().copied().collect();
                    let Some((_, zs)) = route(pair, d1, |c| c == d2, &used) else { continue };
                    let used: BTreeSet<usize> = used.into_iter().chain(zs.iter().copied()).collect();
                    let Some(x2) = leg(pair, p2, &used) else { continue };
                    let Some(xs) = disjoint_union(&x1, &x2) else { continue };
                    let mut op = hop_operator(pair, PlaquetteColor::Light, &xs);
                    op.mul_assign(&hop_operator(pair, PlaquetteColor::Dark, &zs));
                    if let Some(r) = accept(op)? {
                        return Ok(r);
                    }
                }
            }
        }
        _ => return Err(Error::Precondition(format!("{crossings} crossings are not supported"))),
    }
    Err(Error::Precondition(format!("no string with {crossings} crossings fits this cut")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeFluxReport {
    pub zero: StringReport,
    pub single: StringReport,
    pub double: StringReport,
}

impl ChargeFluxReport {
    pub fn holds(&self) -> bool {
        [&self.zero, &self.single, &self.double].iter().all(|r| r.commutes_with_defects)
            && self.zero.is_same_type()
            && self.single.is_mixed()
            && self.double.is_same_type()
    }
}

/// A charge crossing the cut once comes out as a flux, twice as a charge.
pub fn check_charge_flux_conversion(pair: &TwistPair) -> Result<ChargeFluxReport> {
    Ok(ChargeFluxReport {
        zero: crossing_string(pair, 0)?,
        single: crossing_string(pair, 1)?,
        double: crossing_string(pair, 2)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionReport {
    /// `L_ε` eigenvalue around each twist.
    pub eps: [Option<Phase>; 2],
    /// Phase of `L_ε²`.
    pub eps_squared: [Phase; 2],
    /// `(L_e, L_m)` around both twists.
    pub vacuum: (Option<i8>, Option<i8>),
    /// The same loops after a `Y` on `injected_at` puts an `ε` inside.
    pub injected: (Option<i8>, Option<i8>),
    pub injected_at: usize,
    pub injection_commutes_with_eps: bool,
    pub eps_after: [Option<Phase>; 2],
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        let imaginary = |p: &Option<Phase>| matches!(p, Some(s) if !s.is_real());
        self.eps.iter().all(imaginary)
            && self.eps_squared.iter().all(|&s| s == Phase::MINUS_ONE)
            && self.vacuum == (Some(1), Some(1))
            && self.injected == (Some(-1), Some(-1))
            && self.injection_commutes_with_eps
            && self.eps_after == self.eps
    }

    /// `1` or `ε` for the two-twist region, before and after the injection.
    pub fn channels(&self) -> (&'static str, &'static str) {
        let name = |c: (Option<i8>, Option<i8>)| match c {
            (Some(1), Some(1)) => "1",
            (Some(-1), Some(-1)) => "eps",
            _ => "?",
        };
        (name(self.vacuum), name(self.injected))
    }
}

fn sign(p: Option<Phase>) -> Option<i8> {
    p.and_then(Phase::sign)
}

pub fn fusion_suite(pair: &TwistPair) -> Result<FusionReport> {
    let eps_loops = [eps_loop(pair, 0)?, eps_loop(pair, 1)?];
    let mut eps = [None; 2];
    let mut eps_squared = [Phase::ONE; 2];
    for k in 0..2 {
        eps[k] = wind(pair, &eps_loops[k])?;
        let op = &eps_loops[k].operator;
        eps_squared[k] = op.multiply(op)?.phase();
    }
    let (le, lm) = pair_loops(pair);
    let vacuum = (sign(wind(pair, &le)?), sign(wind(pair, &lm)?));
    let region: BTreeSet<usize> = le.region.iter().copied().collect();
    let boundary = (0..pair.n()).find(|&q| {
        let y = PauliString::single(pair.n(), q, Pauli1::Y);
        let inside = |color| {
            pair.lattice.cells_of(q).iter().filter(|&&c| pair.lattice.color(c) == color && region.contains(&c)).count()
        };
        !pair.is_measured(q)
            && inside(PlaquetteColor::Light) == 1
            && inside(PlaquetteColor::Dark) == 1
            && eps_loops.iter().all(|l| l.operator.commutes(&y))
    });
    let q = boundary.ok_or_else(|| Error::Precondition("no qubit to inject an eps across the loop".into()))?;
    let y = PauliString::single(pair.n(), q, Pauli1::Y);
    let mut after = pair.clone();
    after.host.apply_pauli(&y);
    let injected = (sign(wind(&after, &le)?), sign(wind(&after, &lm)?));
    let eps_after = [wind(&after, &eps_loops[0])?, wind(&after, &eps_loops[1])?];
    Ok(FusionReport {
        eps,
        eps_squared,
        vacuum,
        injected,
        injected_at: q,
        injection_commutes_with_eps: eps_loops.iter().all(|l| l.operator.commutes(&y)),
        eps_after,
    })
}
