//! Twist scenario scripts. One command per line, `#` starts a comment:
//!
//! ```text
//! lattice torus 4        # or `planar L`; before the first `twist`
//! twist 5 +1             # outcome optional, drawn from the seed otherwise
//! move 23              # `move tip` uses the Y qubit of the moving generator
//! string e 3 4           # X (e), Z (m) or Y (eps) on the listed qubits
//! wind m 1 2 3 4         # explicit closed Z loop
//! wind eps 0             # the built-in loop around twist 0
//! wind pair              # L_e and L_m around both twists
//! check conversion       # or `check fusion`
//! ```

use csscluster_core::twist::*;
use csscluster_core::{Pauli1, PauliString, Rng};
use rand_core::RngCore;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub line: usize,
    pub command: String,
    pub result: String,
    /// False when a `check` failed.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub seed: u64,
    pub entries: Vec<Entry>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("seed {}\n", self.seed);
        for e in &self.entries {
            s.push_str(&format!("{:>4} {:<5} {} => {}\n", e.line, if e.ok { "ok" } else { "FAIL" }, e.command, e.result));
        }
        s
    }
}

struct State {
    lattice: Option<ChessLattice>,
    pair: Option<TwistPair>,
    rng: Rng,
}

fn list(xs: &[usize]) -> String {
    format!("{xs:?}")
}

fn outcome(tok: Option<&&str>, rng: &mut Rng) -> Result<i8, String> {
    match tok.copied() {
        None => Ok(if rng.next_u32() & 1 == 0 { 1 } else { -1 }),
        Some("+1" | "1" | "+") => Ok(1),
        Some("-1" | "-") => Ok(-1),
        Some(t) => Err(format!("bad outcome `{t}`")),
    }
}

fn kind_pauli(kind: &str) -> Result<Pauli1, String> {
    match kind {
        "e" => Ok(Pauli1::X),
        "m" => Ok(Pauli1::Z),
        "eps" => Ok(Pauli1::Y),
        _ => Err(format!("unknown kind `{kind}` (e, m or eps)")),
    }
}

fn fmt_eigen(v: Option<csscluster_core::Phase>) -> String {
    v.map_or("not fixed".into(), |p| ["+1", "+i", "-1", "-i"][p.exponent() as usize].into())
}

impl State {
    fn pair(&self) -> Result<&TwistPair, String> {
        self.pair.as_ref().ok_or_else(|| "no twist pair yet".to_string())
    }

    fn qubits(&self, toks: &[&str]) -> Result<Vec<usize>, String> {
        let n = self.pair()?.n();
        toks.iter()
            .map(|t| match t.parse::<usize>() {
                Ok(q) if q < n => Ok(q),
                _ => Err(format!("bad qubit `{t}`")),
            })
            .collect()
    }

    /// `Ok((result, check passed))`; `Err` is a bad command.
    fn run(&mut self, t: &[&str]) -> Result<(String, bool), String> {
        let core = |e: csscluster_core::Error| e.to_string();
        match t {
            ["lattice", kind, l] => {
                if self.pair.is_some() {
                    return Err("`lattice` must come before `twist`".into());
                }
                let l: usize = l.parse().map_err(|_| format!("bad size `{l}`"))?;
                let lat = match *kind {
                    "torus" => ChessLattice::torus(l),
                    "planar" => ChessLattice::planar(l),
                    _ => return Err(format!("unknown lattice `{kind}`")),
                }
                .map_err(core)?;
                let n = lat.n();
                self.lattice = Some(lat);
                Ok((format!("n={n}"), true))
            }
            ["twist", c, rest @ ..] if rest.len() <= 1 => {
                if self.pair.is_some() {
                    return Err("a twist pair already exists".into());
                }
                let lat = match self.lattice.take() {
                    Some(l) => l,
                    None => ChessLattice::torus(4).map_err(core)?,
                };
                let c: usize = c.parse().map_err(|_| format!("bad qubit `{c}`"))?;
                let o = outcome(rest.first(), &mut self.rng)?;
                let pair = create_twists(&lat, c, o).map_err(core)?;
                let r = format!("outcome {o:+}; G = {}; G^ = {}", pair.g(), pair.g_hat());
                self.lattice = Some(lat);
                self.pair = Some(pair);
                Ok((r, true))
            }
            ["move", q, rest @ ..] if rest.len() <= 1 => {
                let q = if *q == "tip" {
                    let g = self.pair()?.g_hat();
                    g.terms().into_iter().find(|t| t.1 == Pauli1::Y).ok_or("G^ has no Y qubit")?.0
                } else {
                    self.qubits(&[q])?[0]
                };
                let o = outcome(rest.first(), &mut self.rng)?;
                let next = transport_twist(self.pair()?, q, o).map_err(core)?;
                let r = format!("outcome {o:+}; cut {}; G = {}; G^ = {}", list(&next.cut_qubits()), next.g(), next.g_hat());
                self.pair = Some(next);
                Ok((r, true))
            }
            ["string", kind, path @ ..] if !path.is_empty() => {
                let p = kind_pauli(kind)?;
                let qs = self.qubits(path)?;
                let pair = self.pair()?;
                let op = PauliString::uniform(pair.n(), qs, p);
                let rep = string_syndrome(pair, &op, 0).map_err(core)?;
                let r = format!(
                    "light {} dark {}; clear of the cut: {}",
                    list(&rep.light_endpoints),
                    list(&rep.dark_endpoints),
                    rep.commutes_with_defects
                );
                self.pair.as_mut().unwrap().host.apply_pauli(&op);
                Ok((r, true))
            }
            ["wind", "pair"] => {
                let pair = self.pair()?;
                let (le, lm) = pair_loops(pair);
                let r = format!(
                    "L_e {} L_m {}",
                    fmt_eigen(wind(pair, &le).map_err(core)?),
                    fmt_eigen(wind(pair, &lm).map_err(core)?)
                );
                Ok((r, true))
            }
            ["wind", "eps", k] => {
                let k: usize = k.parse().map_err(|_| format!("bad twist `{k}`"))?;
                let pair = self.pair()?;
                let l = eps_loop(pair, k).map_err(core)?;
                Ok((format!("L_eps {}", fmt_eigen(wind(pair, &l).map_err(core)?)), true))
            }
            ["wind", kind @ ("e" | "m"), path @ ..] if !path.is_empty() => {
                let p = kind_pauli(kind)?;
                let qs = self.qubits(path)?;
                let pair = self.pair()?;
                let kind = if p == Pauli1::X { LoopKind::E } else { LoopKind::M };
                let l = LoopOperator { kind, operator: PauliString::uniform(pair.n(), qs, p), region: vec![] };
                Ok((fmt_eigen(wind(pair, &l).map_err(core)?), true))
            }
            ["check", "conversion"] => match check_charge_flux_conversion(self.pair()?) {
                Ok(r) => Ok((
                    format!(
                        "0 crossings: light {} dark {}; 1: light {} dark {}; 2: light {} dark {}",
                        list(&r.zero.light_endpoints),
                        list(&r.zero.dark_endpoints),
                        list(&r.single.light_endpoints),
                        list(&r.single.dark_endpoints),
                        list(&r.double.light_endpoints),
                        list(&r.double.dark_endpoints)
                    ),
                    r.holds(),
                )),
                Err(e) => Ok((e.to_string(), false)),
            },
            ["check", "fusion"] => match fusion_suite(self.pair()?) {
                Ok(f) => {
                    let (a, b) = f.channels();
                    Ok((
                        format!(
                            "L_eps {} {}; channel {a} then {b} after eps at qubit {}",
                            fmt_eigen(f.eps[0]),
                            fmt_eigen(f.eps[1]),
                            f.injected_at
                        ),
                        f.passed(),
                    ))
                }
                Err(e) => Ok((e.to_string(), false)),
            },
            _ => Err(format!("unknown command `{}`", t.join(" "))),
        }
    }
}

/// Run a script; a malformed or impossible command aborts with a parse
/// error, failed checks are recorded.
pub fn run_scenario(path: &str, text: &str, seed: u64) -> CliResult<ScenarioReport> {
    let mut st = State { lattice: None, pair: None, rng: csscluster_core::rng_from_seed(seed) };
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let (result, ok) =
            st.run(&toks).map_err(|msg| CliError::Parse { path: path.into(), line: i + 1, msg })?;
        entries.push(Entry { line: i + 1, command: body.to_string(), result, ok });
    }
    Ok(ScenarioReport { seed, entries })
}
