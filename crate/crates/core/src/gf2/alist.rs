//! Reader and writer for the "alist" sparse parity-check format.
//!
//! Layout: `n m`, then the maximum column and row degrees, then the `n`
//! column degrees and the `m` row degrees, then one line per column and
//! one line per row listing 1-indexed neighbours. Zero entries used as
//! padding by some writers are ignored on input.

use std::fmt::Write as _;

use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

pub fn write_alist(h: &SparseMatrix) -> String {
    let (m, n) = (h.rows(), h.cols());
    let col_w = h.col_weights();
    let row_w = h.row_weights();
    let mut out = String::new();
    let join = |xs: &mut dyn Iterator<Item = usize>| {
        xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    };
    writeln!(out, "{n} {m}").unwrap();
    writeln!(
        out,
        "{} {}",
        col_w.iter().max().copied().unwrap_or(0),
        row_w.iter().max().copied().unwrap_or(0)
    )
    .unwrap();
    writeln!(out, "{}", join(&mut col_w.iter().copied())).unwrap();
    writeln!(out, "{}", join(&mut row_w.iter().copied())).unwrap();
    for c in 0..n {
        writeln!(out, "{}", join(&mut h.col_support(c).iter().map(|r| r + 1))).unwrap();
    }
    for r in 0..m {
        writeln!(out, "{}", join(&mut h.row_support(r).iter().map(|c| c + 1))).unwrap();
    }
    out
}

pub fn read_alist(text: &str) -> Result<SparseMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut next_numbers = |what: &str| -> Result<(usize, Vec<usize>)> {
        let (line, text) = lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("unexpected end of input reading {what}"),
        })?;
        let nums = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|e| Error::Parse {
                    line,
                    message: format!("{what}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((line, nums))
    };

    let (line, dims) = next_numbers("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(Error::Parse {
            line,
            message: "expected `n m`".into(),
        });
    };
    next_numbers("max degrees")?;
    let (line, col_w) = next_numbers("column degrees")?;
    if col_w.len() != n {
        return Err(Error::Parse {
            line,
            message: format!("expected {n} column degrees"),
        });
    }
    let (line, row_w) = next_numbers("row degrees")?;
    if row_w.len() != m {
        return Err(Error::Parse {
            line,
            message: format!("expected {m} row degrees"),
        });
    }

    let mut entries = Vec::new();
    for (c, &w) in col_w.iter().enumerate() {
        let (line, adj) = next_numbers("column list")?;
        let adj: Vec<usize> = adj.into_iter().filter(|&x| x != 0).collect();
        if adj.len() != w || adj.iter().any(|&r| r > m) {
            return Err(Error::Parse {
                line,
                message: format!("bad adjacency for column {}", c + 1),
            });
        }
        entries.extend(adj.into_iter().map(|r| (r - 1, c)));
    }
    let mut from_rows = Vec::new();
    for (r, &w) in row_w.iter().enumerate() {
        let (line, adj) = next_numbers("row list")?;
        let adj: Vec<usize> = adj.into_iter().filter(|&x| x != 0).collect();
        if adj.len() != w || adj.iter().any(|&c| c > n) {
            return Err(Error::Parse {
                line,
                message: format!("bad adjacency for row {}", r + 1),
            });
        }
        from_rows.extend(adj.into_iter().map(|c| (r, c - 1)));
    }
    entries.sort_unstable();
    from_rows.sort_unstable();
    if entries != from_rows {
        return Err(Error::Parse {
            line: 0,
            message: "row and column lists disagree".into(),
        });
    }
    SparseMatrix::from_entries(m, n, &entries)
}
