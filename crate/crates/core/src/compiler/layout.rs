//! Orthogonal embedding of a max-degree-4 graph into a grid of 6×6 tiles.
//!
//! Vertices sit on one coarse row, three tile columns apart. Every edge
//! leaves its endpoints through a pin (the middle column, or a side arm that
//! bends up or down), runs to a private horizontal track above or below the
//! vertex row, and comes back down. Tracks are shared by edges with disjoint
//! column spans. Where a pin crosses a track the tile holds a flattening
//! gadget.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub(crate) const TILE: usize = 6;
const MID: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    N,
    E,
    S,
    W,
}

impl Side {
    fn mid(self) -> (usize, usize) {
        match self {
            Side::N => (MID, 0),
            Side::S => (MID, TILE - 1),
            Side::W => (0, MID),
            Side::E => (TILE - 1, MID),
        }
    }

    fn vertical(self) -> bool {
        matches!(self, Side::N | Side::S)
    }
}

/// Local gadget cells of a crossing tile, column-major.
const GADGET: [(usize, usize); 6] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)];
const CROSS_NS: ([(usize, usize); 3], [(usize, usize); 1]) = ([(3, 0), (2, 0), (2, 1)], [(3, 5)]);
const CROSS_WE: ([(usize, usize); 3], [(usize, usize); 3]) = ([(0, 3), (0, 4), (1, 4)], [(4, 2), (5, 2), (5, 3)]);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wire {
    pub ends: (usize, usize),
    /// Interior grid vertices from `ends.0` to `ends.1`.
    pub path: Vec<usize>,
    /// `jump[i]`: `path[i]` and `path[i+1]` are joined by a gadget, not a grid edge.
    pub jump: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub width: usize,
    pub height: usize,
    pub position: Vec<usize>,
    pub wires: Vec<Wire>,
    pub gadgets: Vec<[usize; 6]>,
}

impl Layout {
    pub fn kept(&self) -> Vec<bool> {
        let mut k = vec![false; self.width * self.height];
        for &p in &self.position {
            k[p] = true;
        }
        for w in &self.wires {
            for &p in &w.path {
                k[p] = true;
            }
        }
        for g in &self.gadgets {
            for &p in g {
                k[p] = true;
            }
        }
        k
    }

    /// Edges the kept vertices should induce on the grid.
    pub fn intended_edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        let mut add = |a: usize, b: usize| e.push((a.min(b), a.max(b)));
        for w in &self.wires {
            add(self.position[w.ends.0], w.path[0]);
            for i in 0..w.path.len() - 1 {
                if !w.jump[i] {
                    add(w.path[i], w.path[i + 1]);
                }
            }
            add(*w.path.last().unwrap(), self.position[w.ends.1]);
        }
        for g in &self.gadgets {
            for (a, b) in [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)] {
                add(g[a], g[b]);
            }
            let w = self.width;
            add(g[0], g[0] - w);
            add(g[3], g[3] + 1);
            add(g[5], g[5] + w);
            add(g[2], g[2] - 1);
        }
        e.sort_unstable();
        e.dedup();
        e
    }

    /// Edges actually induced on the grid by the kept vertices.
    pub fn induced_edges(&self) -> Vec<(usize, usize)> {
        let kept = self.kept();
        let mut e = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                let v = y * self.width + x;
                if !kept[v] {
                    continue;
                }
                if x + 1 < self.width && kept[v + 1] {
                    e.push((v, v + 1));
                }
                if y + 1 < self.height && kept[v + self.width] {
                    e.push((v, v + self.width));
                }
            }
        }
        e
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pin {
    Middle,
    West,
    East,
}

#[derive(Clone, Copy, Debug)]
struct Visit {
    edge: usize,
    from: Side,
    to: Side,
}

/// Lay out a graph on `n` vertices with the given edges; `order[i]` is the
/// vertex placed at slot `i`.
pub fn layout(n: usize, edges: &[(usize, usize)], order: &[usize]) -> Result<Layout> {
    if order.len() != n {
        return Err(Error::Embedding(format!("order lists {} of {n} vertices", order.len())));
    }
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        slot[v] = i;
    }
    let mut incident = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        if a == b || a >= n || b >= n {
            return Err(Error::Embedding(format!("bad edge ({a}, {b})")));
        }
        incident[a].push(e);
        incident[b].push(e);
    }
    if let Some(v) = (0..n).find(|&v| incident[v].len() > 4) {
        return Err(Error::Embedding(format!("vertex {v} has degree {} > 4", incident[v].len())));
    }

    // up (true) or down per edge, keeping at most three of each at every vertex
    let mut up = vec![false; edges.len()];
    let mut count = vec![[0usize; 2]; n];
    let mut by_len: Vec<usize> = (0..edges.len()).collect();
    by_len.sort_by_key(|&e| (slot[edges[e].0].abs_diff(slot[edges[e].1]), e));
    for e in by_len {
        let (a, b) = edges[e];
        let load = |d: usize| count[a][d].max(count[b][d]);
        let d = if load(0) < load(1) || (load(0) == load(1) && e % 2 == 0) { 0 } else { 1 };
        if count[a][d] >= 3 || count[b][d] >= 3 {
            return Err(Error::Embedding(format!("cannot balance pins on edge ({a}, {b})")));
        }
        count[a][d] += 1;
        count[b][d] += 1;
        up[e] = d == 0;
    }

    let center = |v: usize| 3 * slot[v] + 1;
    let other = |e: usize, v: usize| if edges[e].0 == v { edges[e].1 } else { edges[e].0 };
    // pin (per edge end) assignment
    let mut pin_of: BTreeMap<(usize, usize), Pin> = BTreeMap::new();
    for v in 0..n {
        let mut halves: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for &e in &incident[v] {
            halves[if up[e] { 0 } else { 1 }].push(e);
        }
        for h in &mut halves {
            h.sort_by_key(|&e| slot[other(e, v)]);
        }
        let extra = [halves[0].len().saturating_sub(1), halves[1].len().saturating_sub(1)];
        let left = |h: &[usize]| h.iter().filter(|&&e| slot[other(e, v)] < slot[v]).count();
        // which half owns the west and east arms
        let (west, east) = match extra {
            [2, _] => (Some(0), Some(0)),
            [_, 2] => (Some(1), Some(1)),
            [1, 1] => {
                if slot[other(halves[0][0], v)] <= slot[other(halves[1][0], v)] {
                    (Some(0), Some(1))
                } else {
                    (Some(1), Some(0))
                }
            }
            [1, 0] => {
                if 2 * left(&halves[0]) >= halves[0].len() {
                    (Some(0), None)
                } else {
                    (None, Some(0))
                }
            }
            [0, 1] => {
                if 2 * left(&halves[1]) >= halves[1].len() {
                    (Some(1), None)
                } else {
                    (None, Some(1))
                }
            }
            _ => (None, None),
        };
        for (d, h) in halves.iter().enumerate() {
            let mut pins = Vec::new();
            if west == Some(d) {
                pins.push(Pin::West);
            }
            if !h.is_empty() {
                pins.push(Pin::Middle);
            }
            if east == Some(d) {
                pins.push(Pin::East);
            }
            debug_assert_eq!(pins.len(), h.len());
            for (&e, &p) in h.iter().zip(&pins) {
                pin_of.insert((e, v), p);
            }
        }
    }
    let pin_col = |e: usize, v: usize| match pin_of[&(e, v)] {
        Pin::Middle => center(v),
        Pin::West => center(v) - 1,
        Pin::East => center(v) + 1,
    };

    // left-edge track packing per half
    let mut track = vec![0usize; edges.len()];
    let mut tracks_used = [0usize; 2];
    for d in 0..2 {
        let mut es: Vec<usize> = (0..edges.len()).filter(|&e| up[e] == (d == 0)).collect();
        let span = |e: usize| {
            let (a, b) = (pin_col(e, edges[e].0), pin_col(e, edges[e].1));
            (a.min(b), a.max(b))
        };
        es.sort_by_key(|&e| span(e));
        let mut last_hi: Vec<usize> = Vec::new();
        for e in es {
            let (lo, hi) = span(e);
            let t = match last_hi.iter().position(|&h| h < lo) {
                Some(t) => t,
                None => {
                    last_hi.push(0);
                    last_hi.len() - 1
                }
            };
            last_hi[t] = hi;
            track[e] = t;
        }
        tracks_used[d] = last_hi.len();
    }
    let r0 = tracks_used[0];
    let cw = 3 * n.max(1);
    let ch = tracks_used[0] + 1 + tracks_used[1];
    let row_of = |e: usize| if up[e] { r0 - 1 - track[e] } else { r0 + 1 + track[e] };

    // coarse visits
    let mut tiles: BTreeMap<(usize, usize), Vec<Visit>> = BTreeMap::new();
    let mut routes: Vec<Vec<(usize, usize)>> = Vec::with_capacity(edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        let (vert_out, vert_in) = if up[e] { (Side::N, Side::S) } else { (Side::S, Side::N) };
        let tr = row_of(e);
        let (cu, cv) = (pin_col(e, u), pin_col(e, v));
        let mut seq: Vec<(usize, usize, Side, Side)> = Vec::new();
        match pin_of[&(e, u)] {
            Pin::West => seq.push((cu, r0, Side::E, vert_out)),
            Pin::East => seq.push((cu, r0, Side::W, vert_out)),
            Pin::Middle => {}
        }
        let rows_between: Vec<usize> = if tr < r0 { (tr + 1..r0).rev().collect() } else { (r0 + 1..tr).collect() };
        for &r in &rows_between {
            seq.push((cu, r, vert_in, vert_out));
        }
        let (toward, back) = if cv > cu { (Side::E, Side::W) } else { (Side::W, Side::E) };
        seq.push((cu, tr, vert_in, toward));
        let cols: Vec<usize> = if cv > cu { (cu + 1..cv).collect() } else { (cv + 1..cu).rev().collect() };
        for c in cols {
            seq.push((c, tr, back, toward));
        }
        seq.push((cv, tr, back, vert_in));
        for &r in rows_between.iter().rev() {
            seq.push((cv, r, vert_out, vert_in));
        }
        match pin_of[&(e, v)] {
            Pin::West => seq.push((cv, r0, vert_out, Side::E)),
            Pin::East => seq.push((cv, r0, vert_out, Side::W)),
            Pin::Middle => {}
        }
        let mut route = Vec::with_capacity(seq.len());
        for (c, r, from, to) in seq {
            tiles.entry((c, r)).or_default().push(Visit { edge: e, from, to });
            route.push((c, r));
        }
        routes.push(route);
    }

    let width = TILE * cw;
    let height = TILE * ch;
    let gid = |c: usize, r: usize, (x, y): (usize, usize)| (TILE * r + y) * width + TILE * c + x;
    let mut crossing: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut gadgets = Vec::new();
    for (&(c, r), visits) in &tiles {
        let straight = |v: &Visit| v.from.vertical() == v.to.vertical();
        match visits.as_slice() {
            [_] => {}
            [a, b] if straight(a) && straight(b) && a.from.vertical() != b.from.vertical() => {
                crossing.insert((c, r), ());
                gadgets.push(GADGET.map(|p| gid(c, r, p)));
            }
            _ => return Err(Error::Embedding(format!("tile ({c}, {r}) is routed {} times", visits.len()))),
        }
    }
    let position: Vec<usize> = (0..n).map(|v| gid(center(v), r0, (MID, MID))).collect();
    for v in 0..n {
        if tiles.contains_key(&(center(v), r0)) {
            return Err(Error::Embedding(format!("vertex tile of {v} is also routed")));
        }
    }

    let mut wires = Vec::with_capacity(edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        let mut path: Vec<usize> = Vec::new();
        let mut jump: Vec<bool> = Vec::new();
        let push = |p: usize, jump_before: bool, path: &mut Vec<usize>, jump: &mut Vec<bool>| {
            if !path.is_empty() {
                jump.push(jump_before);
            }
            path.push(p);
        };
        let side_of = |w: usize, end: usize| match pin_of[&(w, end)] {
            Pin::Middle => {
                if up[w] {
                    Side::N
                } else {
                    Side::S
                }
            }
            Pin::West => Side::W,
            Pin::East => Side::E,
        };
        let (uc, vc) = ((center(u), r0), (center(v), r0));
        for p in walk((MID, MID), side_of(e, u).mid()).into_iter().skip(1) {
            push(gid(uc.0, uc.1, p), false, &mut path, &mut jump);
        }
        for &(c, r) in &routes[e] {
            let vis = tiles[&(c, r)].iter().find(|x| x.edge == e).copied().unwrap();
            if crossing.contains_key(&(c, r)) {
                let (first, second): (Vec<(usize, usize)>, Vec<(usize, usize)>) = match (vis.from, vis.to) {
                    (Side::N, Side::S) => (CROSS_NS.0.to_vec(), CROSS_NS.1.to_vec()),
                    (Side::S, Side::N) => (rev(&CROSS_NS.1), rev(&CROSS_NS.0)),
                    (Side::W, Side::E) => (CROSS_WE.0.to_vec(), CROSS_WE.1.to_vec()),
                    _ => (rev(&CROSS_WE.1), rev(&CROSS_WE.0)),
                };
                for p in first {
                    push(gid(c, r, p), false, &mut path, &mut jump);
                }
                for (i, p) in second.into_iter().enumerate() {
                    push(gid(c, r, p), i == 0, &mut path, &mut jump);
                }
            } else {
                let mut pts = walk(vis.from.mid(), (MID, MID));
                pts.extend(walk((MID, MID), vis.to.mid()).into_iter().skip(1));
                for p in pts {
                    push(gid(c, r, p), false, &mut path, &mut jump);
                }
            }
        }
        let mut tail = walk(side_of(e, v).mid(), (MID, MID));
        tail.pop();
        for p in tail {
            push(gid(vc.0, vc.1, p), false, &mut path, &mut jump);
        }
        wires.push(Wire { ends: (u, v), path, jump });
    }
    Ok(Layout { width, height, position, wires, gadgets })
}

fn rev(s: &[(usize, usize)]) -> Vec<(usize, usize)> {
    s.iter().rev().copied().collect()
}

/// Grid points from `a` to `b` (same row or column), both included.
fn walk(a: (usize, usize), b: (usize, usize)) -> Vec<(usize, usize)> {
    let mut out = vec![a];
    let mut p = a;
    while p != b {
        if p.0 != b.0 {
            p.0 = if b.0 > p.0 { p.0 + 1 } else { p.0 - 1 };
        } else {
            p.1 = if b.1 > p.1 { p.1 + 1 } else { p.1 - 1 };
        }
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(n: usize, edges: &[(usize, usize)]) -> Layout {
        let order: Vec<usize> = (0..n).collect();
        let l = layout(n, edges, &order).unwrap();
        assert_eq!(l.induced_edges(), l.intended_edges());
        l
    }

    #[test]
    fn small_graphs_route_cleanly() {
        check(2, &[(0, 1)]);
        check(3, &[(0, 1), (1, 2), (0, 2)]);
        let k5: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let l = check(5, &k5);
        assert!(!l.gadgets.is_empty());
        let cube = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)];
        check(8, &cube);
    }

    #[test]
    fn degree_five_is_rejected() {
        let star: Vec<(usize, usize)> = (1..6).map(|b| (0, b)).collect();
        assert!(matches!(layout(6, &star, &[0, 1, 2, 3, 4, 5]), Err(Error::Embedding(_))));
    }
}
