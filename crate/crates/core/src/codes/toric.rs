use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{CssCode, LogicalBasis};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Torus,
    /// Smooth left/right boundaries, rough top/bottom.
    Planar,
}

fn remove_holes(cells: Vec<Vec<usize>>, holes: &[usize]) -> Result<Vec<Vec<usize>>> {
    let count = cells.len();
    for &h in holes {
        if h >= count {
            return Err(Error::HoleOutOfRange { index: h, count });
        }
    }
    Ok(cells.into_iter().enumerate().filter(|(i, _)| !holes.contains(i)).map(|(_, c)| c).collect())
}

/// Edge qubits of an `L × L` square lattice. Horizontal edges come first.
///
/// Torus: `h(x,y) = y·L + x` joins vertex `(x,y)` to `(x+1,y)` and
/// `v(x,y) = L² + y·L + x` joins `(x,y)` to `(x,y+1)`. Plaquette `y·L + x`
/// has lower-left corner `(x,y)`.
///
/// Planar: vertices `(x,y)` with `x ∈ 0..=L`, `y ∈ 0..L`; `L²` horizontal
/// edges and `(L+1)²` vertical edges `v(x,y)` for `y ∈ -1..L` dangling off
/// the top and bottom rows. Plaquettes `(y+1)·L + x` for `y ∈ -1..L`.
pub fn build_toric_2d(l: usize, topology: Topology, holes: &[usize]) -> Result<CssCode> {
    if l < 2 {
        return Err(Error::InvalidCode(format!("lattice size {l} < 2")));
    }
    match topology {
        Topology::Torus => torus(l, holes),
        Topology::Planar => planar(l, holes),
    }
}

fn torus(l: usize, holes: &[usize]) -> Result<CssCode> {
    let h = |x: usize, y: usize| (y % l) * l + x % l;
    let v = |x: usize, y: usize| l * l + (y % l) * l + x % l;
    let mut plaquettes = Vec::with_capacity(l * l);
    let mut vertices = Vec::with_capacity(l * l);
    for y in 0..l {
        for x in 0..l {
            plaquettes.push(vec![h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)]);
            vertices.push(vec![h(x, y), v(x, y), h(x + l - 1, y), v(x, y + l - 1)]);
        }
    }
    let mut geometry = vec![[0.0; 3]; 2 * l * l];
    for y in 0..l {
        for x in 0..l {
            geometry[h(x, y)] = [x as f64 + 0.5, y as f64, 0.0];
            geometry[v(x, y)] = [x as f64, y as f64 + 0.5, 0.0];
        }
    }
    let z_cells = remove_holes(plaquettes, holes)?;
    let mut code = CssCode::new(format!("toric2d-torus-L{l}"), 2 * l * l, z_cells, vertices);
    code.geometry = Some(geometry);
    if holes.is_empty() {
        // L_z^0 and L_z^1 run along the lattice; L_x^σ crosses L_z^{1−σ}.
        code.logicals = Some(LogicalBasis {
            z: vec![(0..l).map(|x| h(x, 0)).collect(), (0..l).map(|y| v(0, y)).collect()],
            x: vec![(0..l).map(|x| v(x, 0)).collect(), (0..l).map(|y| h(0, y)).collect()],
            partner: vec![1, 0],
        });
    }
    Ok(code)
}

fn planar(l: usize, holes: &[usize]) -> Result<CssCode> {
    let h = |x: usize, y: usize| y * l + x;
    // `y1 = y + 1` for vertical edges starting at row `y ∈ -1..L`.
    let v = |x: usize, y1: usize| l * l + y1 * (l + 1) + x;
    let n = l * l + (l + 1) * (l + 1);
    let mut plaquettes = Vec::new();
    for y1 in 0..=l {
        for x in 0..l {
            let mut c = Vec::with_capacity(4);
            if y1 >= 1 {
                c.push(h(x, y1 - 1));
            }
            c.push(v(x + 1, y1));
            if y1 < l {
                c.push(h(x, y1));
            }
            c.push(v(x, y1));
            plaquettes.push(c);
        }
    }
    let mut vertices = Vec::new();
    for y in 0..l {
        for x in 0..=l {
            let mut c = Vec::with_capacity(4);
            if x < l {
                c.push(h(x, y));
            }
            c.push(v(x, y + 1));
            if x > 0 {
                c.push(h(x - 1, y));
            }
            c.push(v(x, y));
            vertices.push(c);
        }
    }
    let mut geometry = vec![[0.0; 3]; n];
    for y in 0..l {
        for x in 0..l {
            geometry[h(x, y)] = [x as f64 + 0.5, y as f64, 0.0];
        }
    }
    for y1 in 0..=l {
        for x in 0..=l {
            geometry[v(x, y1)] = [x as f64, y1 as f64 - 0.5, 0.0];
        }
    }
    let z_cells = remove_holes(plaquettes, holes)?;
    let mut code = CssCode::new(format!("toric2d-planar-L{l}"), n, z_cells, vertices);
    code.geometry = Some(geometry);
    if holes.is_empty() {
        code.logicals = Some(LogicalBasis {
            z: vec![(0..=l).map(|y1| v(0, y1)).collect()],
            x: vec![(0..=l).map(|x| v(x, 0)).collect()],
            partner: vec![0],
        });
    }
    Ok(code)
}

/// Toric code on a triangular patch of side `side`: qubits on edges, one
/// X-type cell per vertex, one Z-type cell per triangular face.
///
/// Faces are numbered with the upward triangles first (row-major), then the
/// downward ones; `holes` removes faces by that index.
pub fn build_triangular(side: usize, holes: &[usize]) -> Result<CssCode> {
    if side < 1 {
        return Err(Error::InvalidCode("triangle side must be at least 1".into()));
    }
    let mut vid = BTreeMap::new();
    let mut vpos = Vec::new();
    for j in 0..=side {
        for i in 0..=side - j {
            vid.insert((i, j), vpos.len());
            vpos.push((i, j));
        }
    }
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut geometry = Vec::new();
    let pos = |(i, j): (usize, usize)| [i as f64 + j as f64 * 0.5, j as f64 * 0.866_025_403_784_438_6, 0.0];
    let mut edge = |a: (usize, usize), b: (usize, usize), edges: &mut BTreeMap<(usize, usize), usize>| {
        let (ia, ib) = (vid[&a], vid[&b]);
        let key = (ia.min(ib), ia.max(ib));
        let next = edges.len();
        *edges.entry(key).or_insert_with(|| {
            let (pa, pb) = (pos(a), pos(b));
            geometry.push([(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0, 0.0]);
            next
        })
    };
    let mut faces = Vec::new();
    for j in 0..side {
        for i in 0..side - j {
            let (a, b, c) = ((i, j), (i + 1, j), (i, j + 1));
            faces.push(vec![edge(a, b, &mut edges), edge(b, c, &mut edges), edge(a, c, &mut edges)]);
        }
    }
    for j in 0..side.saturating_sub(1) {
        for i in 0..side - 1 - j {
            let (a, b, c) = ((i + 1, j), (i, j + 1), (i + 1, j + 1));
            faces.push(vec![edge(a, b, &mut edges), edge(b, c, &mut edges), edge(a, c, &mut edges)]);
        }
    }
    let n = edges.len();
    let mut vertices = vec![Vec::new(); vpos.len()];
    for (&(a, b), &e) in &edges {
        vertices[a].push(e);
        vertices[b].push(e);
    }
    for c in &mut vertices {
        c.sort_unstable();
    }
    let z_cells = remove_holes(faces, holes)?;
    let mut code = CssCode::new(format!("triangular-s{side}"), n, z_cells, vertices);
    code.geometry = Some(geometry);
    Ok(code)
}

/// Toric code on the periodic cubic lattice. Edge `d·V + site` leaves `site`
/// in direction `d`, with `site = (z·Ly + y)·Lx + x`. In the primal convention
/// Z-type cells are plaquettes and X-type cells vertices; `dual` swaps them.
pub fn build_toric_3d(lx: usize, ly: usize, lz: usize, dual: bool) -> Result<CssCode> {
    if lx < 2 || ly < 2 || lz < 2 {
        return Err(Error::InvalidCode(format!("dimensions {lx}×{ly}×{lz} must be at least 2")));
    }
    let dims = [lx, ly, lz];
    let vol = lx * ly * lz;
    let site = |c: [usize; 3]| (c[2] % lz * ly + c[1] % ly) * lx + c[0] % lx;
    let shift = |c: [usize; 3], d: usize, by: usize| {
        let mut c = c;
        c[d] = (c[d] + by) % dims[d];
        c
    };
    let edge = |c: [usize; 3], d: usize| d * vol + site(c);
    let mut plaquettes = Vec::with_capacity(3 * vol);
    let mut vertices = Vec::with_capacity(vol);
    let mut geometry = vec![[0.0; 3]; 3 * vol];
    for z in 0..lz {
        for y in 0..ly {
            for x in 0..lx {
                let c = [x, y, z];
                for (d1, d2) in [(0, 1), (0, 2), (1, 2)] {
                    plaquettes.push(vec![edge(c, d1), edge(shift(c, d1, 1), d2), edge(shift(c, d2, 1), d1), edge(c, d2)]);
                }
                let mut v: Vec<usize> = (0..3).flat_map(|d| [edge(c, d), edge(shift(c, d, dims[d] - 1), d)]).collect();
                v.sort_unstable();
                vertices.push(v);
                for d in 0..3 {
                    let mut p = [x as f64, y as f64, z as f64];
                    p[d] += 0.5;
                    geometry[edge(c, d)] = p;
                }
            }
        }
    }
    let mut code = CssCode::new(format!("toric3d-{lx}x{ly}x{lz}"), 3 * vol, plaquettes, vertices);
    code.geometry = Some(geometry);
    if dual {
        code = code.dual();
        code.name.push_str("-dual");
    }
    Ok(code)
}
