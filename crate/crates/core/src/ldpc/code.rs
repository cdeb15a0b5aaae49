use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{read_alist, write_alist, BitVec, DenseMatrix, SparseMatrix};

/// An LDPC parity-check matrix together with its Tanner-graph indexing.
#[derive(Clone, Debug)]
pub struct LdpcCode {
    h: SparseMatrix,
    dense: DenseMatrix,
    rank: usize,
    seed: Option<u64>,
    /// Edges in check-major order: `edge_var[e]` is the variable of edge `e`.
    pub(crate) edge_var: Vec<usize>,
    /// `check_offsets[j]..check_offsets[j + 1]` are the edges of check `j`.
    pub(crate) check_offsets: Vec<usize>,
    /// Edge ids incident to each variable, flattened by `var_offsets`.
    pub(crate) var_edges: Vec<usize>,
    pub(crate) var_offsets: Vec<usize>,
}

impl LdpcCode {
    pub fn from_matrix(h: SparseMatrix, seed: Option<u64>) -> Result<Self> {
        if h.rows() == 0 || h.cols() == 0 {
            return Err(Error::Construction("empty parity-check matrix".into()));
        }
        let dense = h.to_dense();
        let rank = dense.rank();
        let mut edge_var = Vec::with_capacity(h.edge_count());
        let mut check_offsets = Vec::with_capacity(h.rows() + 1);
        let mut per_var: Vec<Vec<usize>> = vec![Vec::new(); h.cols()];
        check_offsets.push(0);
        for j in 0..h.rows() {
            for &v in h.row_support(j) {
                per_var[v].push(edge_var.len());
                edge_var.push(v);
            }
            check_offsets.push(edge_var.len());
        }
        let mut var_offsets = Vec::with_capacity(h.cols() + 1);
        var_offsets.push(0);
        let mut var_edges = Vec::with_capacity(edge_var.len());
        for edges in per_var {
            var_edges.extend(edges);
            var_offsets.push(var_edges.len());
        }
        Ok(Self {
            h,
            dense,
            rank,
            seed,
            edge_var,
            check_offsets,
            var_edges,
            var_offsets,
        })
    }

    pub fn from_alist(text: &str) -> Result<Self> {
        Self::from_matrix(read_alist(text)?, None)
    }

    pub fn to_alist(&self) -> String {
        write_alist(&self.h)
    }

    /// Blocklength.
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of parity checks, i.e. the syndrome length.
    pub fn m(&self) -> usize {
        self.h.rows()
    }

    /// GF(2) rank of H; the number of syndrome bits that carry information.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn parity_check(&self) -> &SparseMatrix {
        &self.h
    }

    pub fn dense_parity_check(&self) -> &DenseMatrix {
        &self.dense
    }

    pub fn syndrome(&self, y: &BitVec) -> Result<BitVec> {
        self.h.mul_vec(y)
    }

    /// Number of unordered column pairs sharing at least two checks, i.e.
    /// the number of distinct 4-cycles counted by column pair.
    pub fn four_cycle_pairs(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        let mut seen = vec![0usize; n];
        for a in 0..n {
            seen.iter_mut().for_each(|x| *x = 0);
            for &r in self.h.col_support(a) {
                for &b in self.h.row_support(r) {
                    if b > a {
                        seen[b] += 1;
                    }
                }
            }
            count += seen.iter().filter(|&&x| x >= 2).count();
        }
        count
    }
}

/// Builds a regular `(dv, dc)` LDPC code of length `n` by progressive edge
/// growth.
///
/// Each new edge of a variable goes to a check at maximal Tanner-graph
/// distance from it, preferring the lowest current check degree and
/// breaking remaining ties with the seeded generator. Checks that already
/// hold `dc` edges are never chosen, so every row ends with weight `dc`.
/// An attempt that runs out of admissible checks, or would have to close a
/// 4-cycle, restarts on the next attempt stream; 4-cycles are only accepted
/// once every strict attempt has failed.
pub fn build_regular_ldpc(n: usize, dv: usize, dc: usize, seed: u64) -> Result<LdpcCode> {
    if n == 0 || dv == 0 || dc == 0 {
        return Err(Error::Construction(
            "degrees and length must be positive".into(),
        ));
    }
    if !(n * dv).is_multiple_of(dc) {
        return Err(Error::Construction(format!(
            "n * dv = {} is not divisible by dc = {dc}",
            n * dv
        )));
    }
    let m = n * dv / dc;
    if dv > m || dc > n {
        return Err(Error::Construction(format!(
            "degrees ({dv}, {dc}) infeasible for n = {n}, m = {m}"
        )));
    }
    const ATTEMPTS: u64 = 64;
    for attempt in 0..2 * ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt);
        let allow_four_cycles = attempt >= ATTEMPTS;
        if let Some(entries) = peg_attempt(n, m, dv, dc, allow_four_cycles, &mut rng) {
            let h = SparseMatrix::from_entries(m, n, &entries)?;
            return LdpcCode::from_matrix(h, Some(seed));
        }
    }
    Err(Error::Construction(format!(
        "progressive edge growth failed for n = {n}, ({dv}, {dc}) after {ATTEMPTS} attempts"
    )))
}

fn peg_attempt(
    n: usize,
    m: usize,
    dv: usize,
    dc: usize,
    allow_four_cycles: bool,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<(usize, usize)>> {
    let mut var_adj: Vec<Vec<usize>> = vec![Vec::with_capacity(dv); n];
    let mut check_adj: Vec<Vec<usize>> = vec![Vec::with_capacity(dc); m];
    let mut dist = vec![usize::MAX; m];
    let mut var_seen = vec![false; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    let mut best = Vec::new();

    for v in 0..n {
        for _ in 0..dv {
            // Breadth-first distances (in check layers) from v.
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            var_seen.iter_mut().for_each(|s| *s = false);
            var_seen[v] = true;
            frontier.clear();
            for &c in &var_adj[v] {
                dist[c] = 0;
                frontier.push(c);
            }
            let mut depth = 0;
            while !frontier.is_empty() {
                next.clear();
                for &c in &frontier {
                    for &u in &check_adj[c] {
                        if var_seen[u] {
                            continue;
                        }
                        var_seen[u] = true;
                        for &c2 in &var_adj[u] {
                            if dist[c2] == usize::MAX {
                                dist[c2] = depth + 1;
                                next.push(c2);
                            }
                        }
                    }
                }
                std::mem::swap(&mut frontier, &mut next);
                depth += 1;
            }

            best.clear();
            let mut best_key = (0usize, usize::MAX);
            for c in 0..m {
                if check_adj[c].len() >= dc || dist[c] == 0 {
                    continue;
                }
                // Farther first, then lower degree.
                let key = (dist[c], check_adj[c].len());
                let better = best.is_empty()
                    || key.0 > best_key.0
                    || (key.0 == best_key.0 && key.1 < best_key.1);
                if better {
                    best.clear();
                    best_key = key;
                }
                if key == best_key {
                    best.push(c);
                }
            }
            if best.is_empty() || (best_key.0 == 1 && !allow_four_cycles) {
                return None;
            }
            let c = best[rng.random_range(0..best.len())];
            var_adj[v].push(c);
            check_adj[c].push(v);
        }
    }
    Some(
        var_adj
            .iter()
            .enumerate()
            .flat_map(|(v, cs)| cs.iter().map(move |&c| (c, v)))
            .collect(),
    )
}
