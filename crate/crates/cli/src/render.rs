//! DOT and SVG pictures of a pattern on its grid. Vertices measured in X are
//! white, Y yellow, Z blue; output qubits are black.

use std::fmt::Write as _;

use csscluster_core::compiler::MeasurementPattern;
use csscluster_core::graph_state::Basis;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shade {
    X,
    Y,
    Z,
    Output,
}

impl Shade {
    pub fn color(self) -> &'static str {
        match self {
            Shade::X => "white",
            Shade::Y => "yellow",
            Shade::Z => "blue",
            Shade::Output => "black",
        }
    }
}

/// Shade of every grid vertex. Vertices neither measured nor kept (none in a
/// valid pattern) come out as `None`.
pub fn shades(p: &MeasurementPattern) -> Vec<Option<Shade>> {
    let mut out = vec![None; p.num_vertices()];
    for s in &p.steps {
        out[s.vertex] = Some(match s.basis {
            Basis::X => Shade::X,
            Basis::Y => Shade::Y,
            Basis::Z => Shade::Z,
        });
    }
    for &v in &p.output_map {
        out[v] = Some(Shade::Output);
    }
    out
}

pub fn to_dot(p: &MeasurementPattern) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph pattern {{");
    let _ = writeln!(s, "  layout=neato;");
    let _ = writeln!(s, "  node [shape=circle, style=filled, label=\"\", width=0.15, color=gray40];");
    for (v, shade) in shades(p).iter().enumerate() {
        let (x, y) = (v % p.width, v / p.width);
        let color = shade.map_or("gray", Shade::color);
        let _ = writeln!(s, "  v{v} [pos=\"{x},{}!\", fillcolor={color}];", p.height - 1 - y);
    }
    for (a, b) in p.grid_edges() {
        let _ = writeln!(s, "  v{a} -- v{b};");
    }
    let _ = writeln!(s, "}}");
    s
}

pub fn to_svg(p: &MeasurementPattern) -> String {
    const STEP: usize = 12;
    const R: usize = 4;
    let (w, h) = (p.width * STEP + STEP, p.height * STEP + STEP);
    let at = |v: usize| ((v % p.width) * STEP + STEP, (v / p.width) * STEP + STEP);
    let mut s = String::new();
    let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">");
    let _ = writeln!(s, "<g stroke=\"gray\" stroke-width=\"1\">");
    for (a, b) in p.grid_edges() {
        let ((x1, y1), (x2, y2)) = (at(a), at(b));
        let _ = writeln!(s, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>");
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<g stroke=\"black\" stroke-width=\"0.5\">");
    for (v, shade) in shades(p).iter().enumerate() {
        let (x, y) = at(v);
        let color = shade.map_or("gray", Shade::color);
        let _ = writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{R}\" fill=\"{color}\"/>");
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
