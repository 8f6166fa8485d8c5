//! SDPA sparse files (`.dat-s`) and external solvers.
//!
//! The file describes `min c·x` subject to `Σ x_i F_i − F_0 ⪰ 0`. Block 1
//! holds `Σ x_i L_i`. SDPA has no equalities, so each row `a·x = b` becomes
//! the pair of 1×1 blocks `a·x − b ≥ 0` and `b − a·x ≥ 0`. With the
//! nonnegativity flag a final diagonal block carries `x_i ≥ 0`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::process::Command;

use serde::Serialize;

use super::{ReducedSDP, Surd};
use crate::cyclo::Rational;
use crate::error::{Error, Result};

/// Significant digits written for every value.
const DIGITS: usize = 17;

/// A parsed SDPA sparse problem in floating point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SdpaProblem {
    pub m: usize,
    /// Negative sizes denote diagonal blocks.
    pub block_sizes: Vec<i64>,
    pub c: Vec<f64>,
    /// `(matno, blkno, i, j, value)`, 1-based, `i ≤ j`.
    pub entries: Vec<(usize, usize, usize, usize, f64)>,
}

type Entry = (usize, usize, usize, usize, Surd);

/// Block sizes, objective and the nonzero upper-triangle entries, exactly.
pub(crate) fn sdpa_data(r: &ReducedSDP) -> (Vec<i64>, Vec<Surd>, Vec<Entry>) {
    let mut blocks = vec![r.dim as i64];
    let mut entries: Vec<Entry> = Vec::new();
    let half = Rational::new(1, 2);
    for (v, l) in r.l.iter().enumerate() {
        let sym = l.is_symmetric();
        for i in 0..r.dim {
            for j in i..r.dim {
                let x = if sym { l.get(i, j).clone() } else { (l.get(i, j) + l.get(j, i)).scale(&half) };
                if !x.is_zero() {
                    entries.push((v + 1, 1, i + 1, j + 1, x));
                }
            }
        }
    }
    for (row, b) in &r.eq_constraints {
        for sign in [1i64, -1] {
            blocks.push(1);
            let blk = blocks.len();
            let s = Rational::from_int(sign);
            if !b.is_zero() {
                entries.push((0, blk, 1, 1, Surd::from_rational(b * &s)));
            }
            for (v, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    entries.push((v + 1, blk, 1, 1, a.scale(&s)));
                }
            }
        }
    }
    if r.nonneg {
        blocks.push(-(r.d as i64));
        let blk = blocks.len();
        for v in 0..r.d {
            entries.push((v + 1, blk, v + 1, v + 1, Surd::from_int(1)));
        }
    }
    entries.sort_by_key(|e| (e.0, e.1, e.2, e.3));
    (blocks, r.c.clone(), entries)
}

/// The exact problem rounded to `f64`, for comparison with parsed files.
pub fn sdpa_problem(r: &ReducedSDP) -> SdpaProblem {
    let (block_sizes, c, entries) = sdpa_data(r);
    SdpaProblem {
        m: r.d,
        block_sizes,
        c: c.iter().map(Surd::to_f64).collect(),
        entries: entries.into_iter().map(|(a, b, i, j, x)| (a, b, i, j, x.to_f64())).collect(),
    }
}

pub fn write_sdpa_to(r: &ReducedSDP, out: &mut impl Write) -> Result<()> {
    let (blocks, c, entries) = sdpa_data(r);
    let mut s = String::new();
    let _ = writeln!(s, "* orbital reduction: {} variables, PSD block of size {}", r.d, r.dim);
    let _ = writeln!(s, "* form: min c.x subject to sum_i x_i F_i - F_0 >= 0");
    let _ = writeln!(s, "* variables merged over paired orbitals: {}", if r.merged { "yes" } else { "no" });
    if !r.eq_constraints.is_empty() {
        let _ = writeln!(
            s,
            "* blocks 2..{}: each equality a.x = b as the 1x1 pair a.x - b >= 0, b - a.x >= 0",
            2 * r.eq_constraints.len() + 1
        );
    }
    if r.nonneg {
        let _ = writeln!(s, "* block {}: diagonal, x_i >= 0 (entrywise nonnegativity)", blocks.len());
    }
    for (v, members) in r.variables.iter().enumerate() {
        let desc: Vec<String> = members
            .iter()
            .map(|&k| {
                let (a, b) = r.orbital_representatives[k];
                format!("orbital {k} (size {}, pair ({}, {}))", r.orbital_sizes[k], a + 1, b + 1)
            })
            .collect();
        let _ = writeln!(s, "* x{} = {}", v + 1, desc.join(" + "));
    }
    let _ = writeln!(s, "{}", r.d);
    let _ = writeln!(s, "{}", blocks.len());
    let _ = writeln!(s, "{}", blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "));
    let mut decimals: HashMap<&Surd, String> = HashMap::new();
    let mut dec = |x: &'_ Surd| -> String { x.to_decimal(DIGITS) };
    let _ = writeln!(s, "{}", c.iter().map(&mut dec).collect::<Vec<_>>().join(" "));
    for (mat, blk, i, j, x) in &entries {
        let v = decimals.entry(x).or_insert_with(|| x.to_decimal(DIGITS));
        let _ = writeln!(s, "{mat} {blk} {i} {j} {v}");
    }
    out.write_all(s.as_bytes())?;
    Ok(())
}

pub fn write_sdpa(r: &ReducedSDP, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    write_sdpa_to(r, &mut f)
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("SDPA line {line}: {msg}"))
}

/// Reads the SDPA sparse format. Comment lines start with `*` or `"`;
/// separators `, { } ( )` are treated as whitespace.
pub fn parse_sdpa(text: &str) -> Result<SdpaProblem> {
    let mut tokens: Vec<(usize, String)> = Vec::new();
    let mut header_done = false;
    let mut counted = 0;
    for (no, line) in text.lines().enumerate() {
        let t = line.trim_start();
        if !header_done && (t.starts_with('*') || t.starts_with('"')) {
            continue;
        }
        if t.is_empty() {
            continue;
        }
        header_done = true;
        let cleaned: String = t.chars().map(|c| if ",{}()".contains(c) { ' ' } else { c }).collect();
        let words = cleaned.split_whitespace().map(|w| (no + 1, w.to_string()));
        // the m and nblocks lines may carry trailing remarks
        if counted < 2 {
            tokens.extend(words.take(1));
            counted += 1;
        } else {
            tokens.extend(words);
        }
    }
    let mut it = tokens.into_iter();
    let mut next = |what: &str| it.next().ok_or_else(|| Error::Parse(format!("SDPA: unexpected end of file reading {what}")));
    let int = |(l, w): (usize, String)| w.parse::<i64>().map_err(|_| parse_err(l, format!("expected an integer, found `{w}`")));
    let float = |(l, w): (usize, String)| w.parse::<f64>().map_err(|_| parse_err(l, format!("expected a number, found `{w}`")));
    let m = int(next("m")?)?;
    let nblocks = int(next("nblocks")?)?;
    if m < 0 || nblocks < 1 {
        return Err(Error::Parse("SDPA: bad problem dimensions".into()));
    }
    let block_sizes = (0..nblocks).map(|_| int(next("block sizes")?)).collect::<Result<Vec<_>>>()?;
    let c = (0..m).map(|_| float(next("objective")?)).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    while let Ok(first) = next("entry") {
        let line = first.0;
        let mat = int(first)?;
        let blk = int(next("entry")?)?;
        let i = int(next("entry")?)?;
        let j = int(next("entry")?)?;
        let v = float(next("entry")?)?;
        if mat < 0 || mat > m || blk < 1 || blk > nblocks {
            return Err(parse_err(line, "matrix or block number out of range"));
        }
        let size = block_sizes[blk as usize - 1].unsigned_abs() as i64;
        if i < 1 || j < 1 || i > size || j > size {
            return Err(parse_err(line, "index outside its block"));
        }
        entries.push((mat as usize, blk as usize, i as usize, j as usize, v));
    }
    Ok(SdpaProblem { m: m as usize, block_sizes, c, entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverResult {
    /// Optimal `min c·x` reported by the solver.
    pub objective: f64,
    pub primal: Option<f64>,
    pub dual: Option<f64>,
    pub status: String,
}

fn value_after(line: &str, keys: &[&str]) -> Option<f64> {
    for k in keys {
        if let Some(p) = line.find(k) {
            let rest = line[p + k.len()..].trim_start_matches([' ', ':', '=', '\t']);
            let word = rest.split_whitespace().next()?;
            return word.parse().ok();
        }
    }
    None
}

/// Reads CSDP-style (`Primal objective value:`) or SDPA-style
/// (`objValPrimal =`) solver output.
pub fn parse_solver_output(text: &str) -> Result<SolverResult> {
    let mut primal = None;
    let mut dual = None;
    let mut status = None;
    for line in text.lines() {
        let t = line.trim();
        if let Some(v) = value_after(t, &["Primal objective value", "objValPrimal"]) {
            primal = Some(v);
        }
        if let Some(v) = value_after(t, &["Dual objective value", "objValDual"]) {
            dual = Some(v);
        }
        if t.starts_with("Success") || t.contains("pdOPT") {
            status = Some("success".to_string());
        } else if status.is_none() && (t.starts_with("Failure") || t.starts_with("Partial success") || t.contains("phase.value")) {
            status = Some(t.to_string());
        }
    }
    let status = status.ok_or_else(|| Error::Solver("no status line in solver output".into()))?;
    let objective = dual.or(primal).ok_or_else(|| Error::Solver("no objective value in solver output".into()))?;
    Ok(SolverResult { objective, primal, dual, status })
}

/// Runs `command path` (the command may carry its own arguments) and parses
/// the result. A status other than success is an error.
pub fn solve_external(path: &Path, command: &str) -> Result<SolverResult> {
    let mut parts = command.split_whitespace();
    let program = parts.next().ok_or_else(|| Error::Solver("empty solver command".into()))?;
    let output = Command::new(program).args(parts).arg(path).output().map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::Solver(format!("solver executable `{program}` not found")),
        _ => Error::Solver(format!("could not run `{program}`: {e}")),
    })?;
    let text = String::from_utf8_lossy(&output.stdout);
    let result = parse_solver_output(&text).map_err(|e| {
        let err = String::from_utf8_lossy(&output.stderr);
        Error::Solver(format!("{e}; exit status {}; stderr: {}", output.status, err.trim()))
    })?;
    if result.status != "success" {
        return Err(Error::Solver(format!("solver reported `{}`", result.status)));
    }
    Ok(result)
}
