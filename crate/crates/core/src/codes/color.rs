use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{CssCode, LogicalKind, LogicalOperator};
use crate::error::{Error, Result};

/// Hexagonal color code on an `L × L` torus with `L % 3 == 0`.
///
/// Plaquettes sit on triangular-lattice sites `(i,j)` with index `j·L + i` and
/// color `(i − j) mod 3`. Qubits are the triangles: `up(i,j) = 2(j·L + i)`
/// with corners `(i,j),(i+1,j),(i,j+1)` and `down(i,j) = up(i,j) + 1` with
/// corners `(i+1,j),(i,j+1),(i+1,j+1)`.
pub fn build_color_2d(l: usize) -> Result<CssCode> {
    if l == 0 || l % 3 != 0 {
        return Err(Error::InvalidCode(format!("hexagonal torus size {l} is not 3-colorable")));
    }
    let up = |i: usize, j: usize| 2 * ((j % l) * l + i % l);
    let down = |i: usize, j: usize| up(i, j) + 1;
    let mut cells = Vec::with_capacity(l * l);
    let mut colors = Vec::with_capacity(l * l);
    for j in 0..l {
        for i in 0..l {
            let (im, jm) = (i + l - 1, j + l - 1);
            let mut c = vec![up(i, j), up(im, j), up(i, jm), down(im, j), down(i, jm), down(im, jm)];
            c.sort_unstable();
            cells.push(c);
            colors.push(((i + 2 * j) % 3) as u8);
        }
    }
    let s3 = 0.866_025_403_784_438_6;
    let mut geometry = vec![[0.0; 3]; 2 * l * l];
    for j in 0..l {
        for i in 0..l {
            let (x, y) = (i as f64 + j as f64 * 0.5, j as f64 * s3);
            geometry[up(i, j)] = [x + 0.5, y + s3 / 3.0, 0.0];
            geometry[down(i, j)] = [x + 1.0, y + 2.0 * s3 / 3.0, 0.0];
        }
    }
    let mut code = CssCode::new(format!("color2d-L{l}"), 2 * l * l, cells.clone(), cells);
    code.z_colors = Some(colors.clone());
    code.x_colors = Some(colors);
    code.geometry = Some(geometry);
    Ok(code)
}

/// Colored non-contractible loops of the hexagonal torus: for each color and
/// each of the two directions, a Z-type and an X-type loop. A loop of color
/// `c` hops between plaquettes of color `c` along the edges joining them.
pub fn color_2d_loops(l: usize) -> Result<Vec<LogicalOperator>> {
    if l == 0 || l % 3 != 0 {
        return Err(Error::InvalidCode(format!("hexagonal torus size {l} is not 3-colorable")));
    }
    let up = |i: usize, j: usize| 2 * ((j % l) * l + i % l);
    let mut out = Vec::new();
    for kind in [LogicalKind::Lz, LogicalKind::Lx] {
        for color in 0..3u8 {
            let i0 = color as usize;
            for direction in 0..2 {
                let mut support = Vec::with_capacity(2 * l);
                for k in 0..l {
                    if direction == 0 {
                        let (i, j) = (i0 + k, k);
                        support.extend([up(i, j), up(i, j) + 1]);
                    } else {
                        // steps of (2, −1); the edge from (i,j) joins down(i,j−1) and up(i+1,j−1)
                        let (i, j1) = (i0 + 2 * k, l * l - k - 1);
                        support.extend([up(i, j1) + 1, up(i + 1, j1)]);
                    }
                }
                support.sort_unstable();
                out.push(LogicalOperator { kind, direction, color: Some(color), support });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColexPreset {
    ThreeCell,
    SixCell,
}

impl ColexPreset {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "three_cell" => Ok(ColexPreset::ThreeCell),
            "six_cell" => Ok(ColexPreset::SixCell),
            _ => Err(Error::UnknownPreset(name.into())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ColexPreset::ThreeCell => "three_cell",
            ColexPreset::SixCell => "six_cell",
        }
    }

    /// Side squares of the central prism that carry a cubic cell.
    fn squares(self) -> &'static [usize] {
        match self {
            ColexPreset::ThreeCell => &[0, 9],
            ColexPreset::SixCell => &[0, 4, 9, 12, 14],
        }
    }
}

/// Four-coloring data of a colex preset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColexColoring {
    pub cell_colors: Vec<u8>,
    pub edges: Vec<(usize, usize, u8)>,
}

const RING: usize = 16;

/// 3-colex made of a 16-gon prism (top `t_i = i`, bottom `b_i = 16 + i`) with
/// cubes glued on some side squares `s_k = {t_k, t_{k+1}, b_k, b_{k+1}}`.
/// Each cube adds four outer vertices `32 + 4m + {0,1,2,3}` above
/// `t_k, t_{k+1}, b_k, b_{k+1}`. Z-type cells are the 3-cells, X-type cells the
/// faces.
pub fn build_colex_3d(preset: ColexPreset) -> (CssCode, ColexColoring) {
    let t = |i: usize| i % RING;
    let b = |i: usize| RING + i % RING;
    let squares = preset.squares();
    let n = 2 * RING + 4 * squares.len();
    let mut z_cells = vec![(0..2 * RING).collect::<Vec<_>>()];
    let mut cell_colors = vec![0u8];
    let mut faces: Vec<Vec<usize>> = vec![(0..RING).map(t).collect(), (0..RING).map(b).collect()];
    for k in 0..RING {
        faces.push(sorted(vec![t(k), t(k + 1), b(k), b(k + 1)]));
    }
    let ring_color = |k: usize| if k % 2 == 0 { 2u8 } else { 1 };
    let mut edges = Vec::new();
    for k in 0..RING {
        edges.push((t(k), t(k + 1), ring_color(k)));
        edges.push((b(k), b(k + 1), ring_color(k)));
        edges.push((t(k), b(k), 3));
    }
    let mut geometry = Vec::with_capacity(n);
    for layer in [1.0, 0.0] {
        for i in 0..RING {
            let a = core::f64::consts::TAU * i as f64 / RING as f64;
            geometry.push([3.0 * libm::cos(a), 3.0 * libm::sin(a), layer]);
        }
    }
    for (m, &k) in squares.iter().enumerate() {
        let o = 2 * RING + 4 * m;
        let inner = [t(k), t(k + 1), b(k), b(k + 1)];
        let outer = [o, o + 1, o + 2, o + 3];
        let mut cube: Vec<usize> = inner.iter().chain(&outer).copied().collect();
        cube.sort_unstable();
        z_cells.push(cube);
        cell_colors.push(3 - ring_color(k));
        faces.push(outer.to_vec());
        faces.push(sorted(vec![inner[0], inner[1], outer[0], outer[1]]));
        faces.push(sorted(vec![inner[2], inner[3], outer[2], outer[3]]));
        faces.push(sorted(vec![inner[0], inner[2], outer[0], outer[2]]));
        faces.push(sorted(vec![inner[1], inner[3], outer[1], outer[3]]));
        for q in 0..4 {
            edges.push((inner[q], outer[q], 0));
            let g = geometry[inner[q]];
            geometry.push([g[0] * 1.4, g[1] * 1.4, g[2]]);
        }
        edges.push((outer[0], outer[1], ring_color(k)));
        edges.push((outer[2], outer[3], ring_color(k)));
        edges.push((outer[0], outer[2], 3));
        edges.push((outer[1], outer[3], 3));
    }
    let mut code = CssCode::new(format!("colex3d-{}", preset.name()), n, z_cells, faces);
    code.z_colors = Some(cell_colors.clone());
    code.geometry = Some(geometry);
    (code, ColexColoring { cell_colors, edges })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Checks the colex coloring rules: edges at a vertex carry distinct colors,
/// every face is bounded by exactly two edge colors, no cell contains an edge
/// of its own color, and cells sharing a face differ in color.
pub fn check_colex_coloring(code: &CssCode, coloring: &ColexColoring) -> core::result::Result<(), String> {
    let mut at_vertex = vec![BTreeSet::new(); code.n];
    for &(a, b, c) in &coloring.edges {
        for v in [a, b] {
            if !at_vertex[v].insert(c) {
                return Err(format!("vertex {v} has two edges of color {c}"));
            }
        }
    }
    let inside = |cell: &[usize], a: usize, b: usize| cell.contains(&a) && cell.contains(&b);
    for (f, face) in code.x_cells.iter().enumerate() {
        let colors: BTreeSet<u8> =
            coloring.edges.iter().filter(|&&(a, b, _)| inside(face, a, b)).map(|&(_, _, c)| c).collect();
        if colors.len() != 2 {
            return Err(format!("face {f} is bounded by {} edge colors", colors.len()));
        }
    }
    for (i, cell) in code.z_cells.iter().enumerate() {
        let own = coloring.cell_colors[i];
        if coloring.edges.iter().any(|&(a, b, c)| c == own && inside(cell, a, b)) {
            return Err(format!("cell {i} contains an edge of its own color {own}"));
        }
    }
    for i in 0..code.z_cells.len() {
        for j in i + 1..code.z_cells.len() {
            let shared = code
                .x_cells
                .iter()
                .any(|f| f.iter().all(|q| code.z_cells[i].contains(q) && code.z_cells[j].contains(q)));
            if shared && coloring.cell_colors[i] == coloring.cell_colors[j] {
                return Err(format!("adjacent cells {i} and {j} share color {}", coloring.cell_colors[i]));
            }
        }
    }
    Ok(())
}
