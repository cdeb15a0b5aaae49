use crate::error::{Error, Result};
use crate::gf2::{BitVec, DenseMatrix};

use super::field::Gf2mField;

/// Narrow-sense primitive binary BCH code of length `2^w - 1`.
#[derive(Clone, Debug)]
pub struct BchCode {
    field: Gf2mField,
    n: usize,
    k: usize,
    t: usize,
    /// Bit `i` = coefficient of `x^i`; degree `n - k`.
    generator: BitVec,
    /// Column `i` of H is `x^i mod g(x)`, so `H yᵗ` is `y(x) mod g(x)`.
    columns: Vec<BitVec>,
}

/// Builds the `t`-error-correcting BCH code over GF(2^w): the generator is
/// the product of the distinct minimal polynomials of `α, α², …, α^{2t}`.
pub fn build_bch(w: usize, t: usize) -> Result<BchCode> {
    if w < 3 {
        return Err(Error::Construction(format!("BCH needs w >= 3, got {w}")));
    }
    if t == 0 {
        return Err(Error::Construction("BCH needs t >= 1".into()));
    }
    let field = Gf2mField::new(w).map_err(|e| Error::Construction(e.to_string()))?;
    let n = field.order();
    if 2 * t >= n {
        return Err(Error::Construction(format!(
            "t = {t} too large for n = {n}"
        )));
    }
    let mut covered = vec![false; n];
    // Coefficients over GF(2^w), lowest degree first.
    let mut g: Vec<u16> = vec![1];
    for j in 1..=2 * t {
        if covered[j] {
            continue;
        }
        let mut coset = Vec::new();
        let mut e = j;
        while !covered[e] {
            covered[e] = true;
            coset.push(e);
            e = (2 * e) % n;
        }
        let mut minimal: Vec<u16> = vec![1];
        for &e in &coset {
            minimal = poly_mul_linear(&field, &minimal, field.alpha_pow(e));
        }
        if minimal.iter().any(|&c| c > 1) {
            return Err(Error::Construction(
                "minimal polynomial has coefficients outside GF(2)".into(),
            ));
        }
        g = poly_mul(&field, &g, &minimal);
    }
    let degree = g.len() - 1;
    if degree >= n {
        return Err(Error::Construction(format!(
            "t = {t} leaves no message bits at n = {n}"
        )));
    }
    let generator = BitVec::from_fn(g.len(), |i| g[i] == 1);

    let m = degree;
    let mut columns = Vec::with_capacity(n);
    let mut cur = BitVec::zeros(m);
    cur.set(0, true);
    for _ in 0..n {
        columns.push(cur.clone());
        // cur <- cur * x mod g
        let carry = cur.get(m - 1);
        let mut next = BitVec::zeros(m);
        for i in 1..m {
            next.set(i, cur.get(i - 1));
        }
        if carry {
            for i in 0..m {
                if generator.get(i) {
                    next.flip(i);
                }
            }
        }
        cur = next;
    }
    Ok(BchCode {
        field,
        n,
        k: n - degree,
        t,
        generator,
        columns,
    })
}

/// `p(x) * (x + a)`.
fn poly_mul_linear(f: &Gf2mField, p: &[u16], a: u16) -> Vec<u16> {
    let mut out = vec![0u16; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] ^= c;
        out[i] ^= f.mul(c, a);
    }
    out
}

fn poly_mul(f: &Gf2mField, a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut out = vec![0u16; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= f.mul(x, y);
        }
    }
    out
}

impl BchCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Designed error-correcting capability.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Syndrome length `n - k`.
    pub fn m(&self) -> usize {
        self.n - self.k
    }

    pub fn field(&self) -> &Gf2mField {
        &self.field
    }

    pub fn generator(&self) -> &BitVec {
        &self.generator
    }

    /// Binary parity-check matrix, `(n - k) × n`.
    pub fn parity_check(&self) -> DenseMatrix {
        let mut h = DenseMatrix::zeros(self.m(), self.n);
        for (c, col) in self.columns.iter().enumerate() {
            for r in col.iter_ones() {
                h.set(r, c, true);
            }
        }
        h
    }

    pub fn syndrome(&self, y: &BitVec) -> Result<BitVec> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: y.len(),
            });
        }
        let mut s = BitVec::zeros(self.m());
        for i in y.iter_ones() {
            s ^= &self.columns[i];
        }
        Ok(s)
    }

    /// Non-systematic encoding `c(x) = msg(x) g(x)`.
    pub fn encode(&self, msg: &BitVec) -> Result<BitVec> {
        if msg.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                actual: msg.len(),
            });
        }
        let mut c = BitVec::zeros(self.n);
        for i in msg.iter_ones() {
            for j in self.generator.iter_ones() {
                c.flip(i + j);
            }
        }
        Ok(c)
    }

    /// Power sums `S_j = r(α^j)`, `j = 1..=2t`, of a syndrome remainder.
    /// Since `g(α^j) = 0` these equal the power sums of any vector in the
    /// coset.
    pub(crate) fn power_sums(&self, rem: &BitVec) -> Vec<u16> {
        let mut s = vec![0u16; 2 * self.t];
        for i in rem.iter_ones() {
            self.add_position(&mut s, i);
        }
        s
    }

    /// Adds the contribution of a single set bit at position `i`.
    #[inline]
    pub(crate) fn add_position(&self, s: &mut [u16], i: usize) {
        let n = self.n;
        let mut e = i % n;
        for sj in s.iter_mut() {
            *sj ^= self.field.alpha_pow(e);
            e += i;
            if e >= n {
                e -= n;
            }
        }
    }

    /// Error positions of the unique pattern of weight `<= t` with power
    /// sums `s`, or `None` when no such pattern exists.
    pub(crate) fn locate(&self, s: &[u16]) -> Option<Vec<usize>> {
        if s.iter().all(|&x| x == 0) {
            return Some(Vec::new());
        }
        let lambda = berlekamp_massey(&self.field, s);
        let degree = lambda.len() - 1;
        if degree > self.t {
            return None;
        }
        let positions = chien_search(&self.field, &lambda, self.n);
        if positions.len() != degree {
            return None;
        }
        // Guard against locators that do not reproduce every power sum.
        let mut check = vec![0u16; s.len()];
        for &i in &positions {
            self.add_position(&mut check, i);
        }
        (check == s).then_some(positions)
    }
}

/// Shortest LFSR (error locator) generating `s[0], s[1], …`, with
/// `s[0] = S_1`. Returned lowest degree first, trailing zeros trimmed.
fn berlekamp_massey(f: &Gf2mField, s: &[u16]) -> Vec<u16> {
    let len = s.len();
    let mut c = vec![0u16; len + 1];
    let mut b = vec![0u16; len + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u16;
    for r in 0..len {
        let mut d = s[r];
        for i in 1..=l {
            d ^= f.mul(c[i], s[r - i]);
        }
        if d == 0 {
            m += 1;
            continue;
        }
        let coef = f.div(d, bd);
        if 2 * l <= r {
            let prev = c.clone();
            for i in m..=len {
                c[i] ^= f.mul(coef, b[i - m]);
            }
            l = r + 1 - l;
            b = prev;
            bd = d;
            m = 1;
        } else {
            for i in m..=len {
                c[i] ^= f.mul(coef, b[i - m]);
            }
            m += 1;
        }
    }
    c.truncate(l + 1);
    while c.len() > 1 && *c.last().unwrap() == 0 {
        c.pop();
    }
    c
}

/// Positions `i < n` with `Λ(α^{-i}) = 0`.
fn chien_search(f: &Gf2mField, lambda: &[u16], n: usize) -> Vec<usize> {
    let q = f.order();
    let logs: Vec<Option<usize>> = lambda.iter().map(|&c| (c != 0).then(|| f.log(c))).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let mut acc = 0u16;
        for (k, l) in logs.iter().enumerate() {
            if let Some(l) = l {
                // Λ_k α^{-ik}
                let e = (l + q * k - (i * k) % q) % q;
                acc ^= f.alpha_pow(e);
            }
        }
        if acc == 0 {
            out.push(i);
        }
    }
    out
}

/// Hard-decision decoding of a received word. Returns the codeword within
/// distance `t` of `r` and the number of corrected positions, or `None` on
/// decoding failure.
pub fn bm_decode(code: &BchCode, r: &BitVec) -> Result<Option<(BitVec, usize)>> {
    let rem = code.syndrome(r)?;
    let s = code.power_sums(&rem);
    Ok(code.locate(&s).map(|pos| {
        let mut c = r.clone();
        for &i in &pos {
            c.flip(i);
        }
        (c, pos.len())
    }))
}
