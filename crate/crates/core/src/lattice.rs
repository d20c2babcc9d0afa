//! Discrete subgroups of real vector spaces and lattices in C.
//!
//! A finitely generated subgroup of R^d is discrete exactly when every
//! generator has rational coordinates with respect to a maximal independent
//! subset. [`discrete_basis`] checks that with rational reconstruction and
//! then row-reduces over the integers to get a Z-basis, remembering how each
//! basis vector is written in the original generators.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::rational;
use crate::tolerance::RANK_THRESHOLD;
use crate::C64;

/// A Z-basis of a discrete subgroup together with integer combinations of
/// the input generators producing each basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBasis {
    pub vectors: Vec<Vec<f64>>,
    pub combos: Vec<Vec<i64>>,
}

impl DiscreteBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Dimension of the real span, by SVD with relative threshold [`RANK_THRESHOLD`].
pub fn real_rank(vs: &[Vec<f64>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let d = vs[0].len();
    let mat = DMatrix::from_fn(d, vs.len(), |i, j| vs[j][i]);
    let sv = mat.svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > RANK_THRESHOLD * smax).count()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(vs: &[Vec<f64>], combo: &[i128]) -> Vec<f64> {
    let d = vs.first().map_or(0, |v| v.len());
    let mut out = vec![0.0; d];
    for (v, &c) in vs.iter().zip(combo) {
        if c != 0 {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c as f64 * x;
            }
        }
    }
    out
}

/// Z-basis of the subgroup generated by `vs`, or [`Error::NotDiscrete`].
pub fn discrete_basis(vs: &[Vec<f64>], max_den: u64) -> Result<DiscreteBasis> {
    let m = vs.len();
    let scale = vs.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if m == 0 || scale == 0.0 {
        return Ok(DiscreteBasis { vectors: vec![], combos: vec![] });
    }
    let d = vs[0].len();
    let r = real_rank(vs);

    // pivoted Gram-Schmidt picks a well conditioned independent subset
    let mut chosen: Vec<usize> = Vec::new();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for _ in 0..r {
        let mut best = (usize::MAX, -1.0, Vec::new());
        for (j, v) in vs.iter().enumerate() {
            if chosen.contains(&j) {
                continue;
            }
            let mut res = v.clone();
            for q in &ortho {
                let c = dot(&res, q);
                for (x, y) in res.iter_mut().zip(q) {
                    *x -= c * y;
                }
            }
            let n = norm(&res);
            if n > best.1 {
                best = (j, n, res);
            }
        }
        let (j, n, mut res) = best;
        res.iter_mut().for_each(|x| *x /= n);
        chosen.push(j);
        ortho.push(res);
    }

    let b = DMatrix::from_fn(d, r, |i, k| vs[chosen[k]][i]);
    let pinv = b
        .clone()
        .pseudo_inverse(1e-300)
        .map_err(|_| Error::NotDiscrete)?;
    let mut coeffs: Vec<Vec<rational::Ratio>> = Vec::with_capacity(m);
    for v in vs {
        let vv = DMatrix::from_fn(d, 1, |i, _| v[i]);
        let c = &pinv * &vv;
        let back = &b * &c;
        let resid = (back - vv).norm();
        if resid > 1e-6 * scale {
            return Err(Error::NotDiscrete);
        }
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            row.push(rational::reconstruct(c[k], max_den).ok_or(Error::NotDiscrete)?);
        }
        coeffs.push(row);
    }
    let l = rational::lcm_all(coeffs.iter().flatten().map(|q| q.den));
    if l > 1_000_000_000_000 {
        return Err(Error::NotDiscrete);
    }

    // rows: [ L * coeffs | identity ]
    let mut rows: Vec<Vec<i128>> = (0..m)
        .map(|j| {
            let mut row: Vec<i128> = coeffs[j]
                .iter()
                .map(|q| q.num as i128 * (l / q.den as i128))
                .collect();
            row.extend((0..m).map(|k| i128::from(k == j)));
            row
        })
        .collect();
    let mut pivot = 0;
    for col in 0..r {
        loop {
            let nz: Vec<usize> = (pivot..m).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    rows.swap(pivot, i);
                    pivot += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = rows[i][col] / rows[p][col];
                    let prow = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x -= q * y;
                    }
                }
            }
        }
    }
    let mut combos: Vec<Vec<i128>> = rows[..pivot].iter().map(|row| row[r..].to_vec()).collect();
    reduce_greedy(vs, &mut combos);
    let vectors = combos.iter().map(|c| combine(vs, c)).collect();
    let combos = combos
        .into_iter()
        .map(|c| c.into_iter().map(|x| x as i64).collect())
        .collect();
    Ok(DiscreteBasis { vectors, combos })
}

/// Pairwise size reduction, shortest first; at most 64 sweeps.
fn reduce_greedy(vs: &[Vec<f64>], combos: &mut [Vec<i128>]) {
    for _ in 0..64 {
        combos.sort_by(|a, b| norm(&combine(vs, a)).total_cmp(&norm(&combine(vs, b))));
        let mut changed = false;
        for i in 0..combos.len() {
            for j in 0..combos.len() {
                if i == j {
                    continue;
                }
                let bi = combine(vs, &combos[i]);
                let bj = combine(vs, &combos[j]);
                let q = (dot(&bi, &bj) / dot(&bj, &bj)).round();
                if q != 0.0 {
                    let q = q as i128;
                    let cj = combos[j].clone();
                    let candidate: Vec<i128> =
                        combos[i].iter().zip(&cj).map(|(x, y)| x - q * y).collect();
                    if norm(&combine(vs, &candidate)) < norm(&bi) * (1.0 - 1e-12) {
                        combos[i] = candidate;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    combos.sort_by(|a, b| norm(&combine(vs, a)).total_cmp(&norm(&combine(vs, b))));
}

/// Discrete subgroup of C of rank at most two.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexLattice {
    basis: Vec<C64>,
}

impl ComplexLattice {
    pub fn trivial() -> Self {
        ComplexLattice { basis: vec![] }
    }

    pub fn from_basis(basis: Vec<C64>) -> Result<Self> {
        if basis.len() > 2 {
            return Err(Error::NotDiscrete);
        }
        if basis.len() == 2 && (basis[1] / basis[0]).im.abs() < RANK_THRESHOLD {
            return Err(Error::NotDiscrete);
        }
        Ok(ComplexLattice { basis })
    }

    pub fn generated_by(gens: &[C64], max_den: u64) -> Result<Self> {
        let vs: Vec<Vec<f64>> = gens.iter().map(|z| vec![z.re, z.im]).collect();
        let b = discrete_basis(&vs, max_den)?;
        Ok(ComplexLattice {
            basis: b.vectors.iter().map(|v| C64::new(v[0], v[1])).collect(),
        })
    }

    pub fn basis(&self) -> &[C64] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Real coordinates of `v` in the basis, if `v` lies in the real span.
    pub fn coords(&self, v: C64) -> Option<Vec<f64>> {
        let tol = 1e-9 * v.norm().max(1.0);
        match self.basis.len() {
            0 => (v.norm() <= tol).then(Vec::new),
            1 => {
                let t = v / self.basis[0];
                (t.im.abs() * self.basis[0].norm() <= tol).then(|| vec![t.re])
            }
            _ => {
                let (a, b) = (self.basis[0], self.basis[1]);
                let det = a.re * b.im - a.im * b.re;
                let x = (v.re * b.im - v.im * b.re) / det;
                let y = (a.re * v.im - a.im * v.re) / det;
                Some(vec![x, y])
            }
        }
    }

    pub fn contains(&self, v: C64, tol: f64) -> bool {
        self.coords(v).is_some_and(|cs| {
            let snapped: C64 = cs
                .iter()
                .zip(&self.basis)
                .map(|(c, b)| b * c.round())
                .sum();
            (snapped - v).norm() <= tol * v.norm().max(1.0)
        })
    }

    /// Representative of `v + Λ` with lattice coordinates in `[0, 1)`.
    pub fn reduce(&self, v: C64) -> C64 {
        match self.coords(v) {
            Some(cs) if !cs.is_empty() => {
                let shift: C64 = cs
                    .iter()
                    .zip(&self.basis)
                    .map(|(c, b)| b * c.floor())
                    .sum();
                v - shift
            }
            _ if self.basis.len() == 1 => {
                let t = v / self.basis[0];
                v - self.basis[0] * t.re.floor()
            }
            _ => v,
        }
    }

    /// Whether `u Λ = Λ`.
    pub fn preserved_by(&self, u: C64, tol: f64) -> bool {
        self.basis
            .iter()
            .all(|b| self.contains(u * b, tol) && self.contains(b / u, tol))
    }

    pub fn same_as(&self, other: &ComplexLattice, tol: f64) -> bool {
        self.rank() == other.rank()
            && self.basis.iter().all(|b| other.contains(*b, tol))
            && other.basis.iter().all(|b| self.contains(*b, tol))
    }

    /// `(β, τ)` with `β Λ = Z` (rank one, `τ = 0`) or `β Λ = Z + Z τ`, `τ` reduced.
    pub fn normal_form(&self) -> Option<(C64, C64)> {
        match self.basis.len() {
            1 => Some((1.0 / self.basis[0], C64::new(0.0, 0.0))),
            2 => {
                let (w1, mut w2) = (self.basis[0], self.basis[1]);
                if (w2 / w1).im < 0.0 {
                    w2 = -w2;
                }
                let (tau, [a, b, c, d]) = reduce_tau(w2 / w1);
                let w1n = w2 * c as f64 + w1 * d as f64;
                let _ = (a, b);
                Some((1.0 / w1n, tau))
            }
            _ => None,
        }
    }
}

/// Reduce `τ` (upper half plane) to the fundamental domain
/// `|Re τ| <= 1/2, |τ| >= 1`, preferring `Re τ >= 0` on the boundary.
/// Returns `τ'` and `[a, b, c, d]` in SL(2, Z) with `τ' = (aτ + b)/(cτ + d)`.
pub fn reduce_tau(tau: C64) -> (C64, [i64; 4]) {
    let tol = 1e-9;
    let mut t = tau;
    let mut m = [1i64, 0, 0, 1];
    for _ in 0..200 {
        let shift = (t.re + 0.5 - tol).ceil() - 1.0;
        if shift != 0.0 {
            let s = shift as i64;
            t -= shift;
            m = [m[0] - s * m[2], m[1] - s * m[3], m[2], m[3]];
        }
        let n2 = t.norm_sqr();
        if n2 < 1.0 - tol || ((n2 - 1.0).abs() <= tol && t.re < -tol) {
            t = -1.0 / t;
            m = [-m[2], -m[3], m[0], m[1]];
            continue;
        }
        break;
    }
    (t, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_generators_reduce() {
        let b = discrete_basis(&[vec![1.0, 0.0], vec![2.0, 0.0], vec![0.5, 0.0]], 1000).unwrap();
        assert_eq!(b.rank(), 1);
        assert!((b.vectors[0][0].abs() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn incommensurable_line_is_not_discrete() {
        let r = discrete_basis(&[vec![1.0], vec![2f64.sqrt() + 1e-3]], 100);
        assert_eq!(r, Err(Error::NotDiscrete));
    }

    #[test]
    fn combos_reproduce_basis() {
        let vs = vec![vec![3.0, 1.0], vec![1.0, 2.0], vec![4.0, 3.0]];
        let b = discrete_basis(&vs, 1000).unwrap();
        assert_eq!(b.rank(), 2);
        for (v, c) in b.vectors.iter().zip(&b.combos) {
            let w = combine(&vs, &c.iter().map(|x| *x as i128).collect::<Vec<_>>());
            assert!(norm(&[v[0] - w[0], v[1] - w[1]]) < 1e-12);
        }
    }

    #[test]
    fn tau_reduction_lands_in_domain() {
        let (t, m) = reduce_tau(C64::new(3.3, 0.1));
        assert!(t.re.abs() <= 0.5 + 1e-9 && t.norm() >= 1.0 - 1e-9);
        assert_eq!(m[0] * m[3] - m[1] * m[2], 1);
        let hex = reduce_tau(C64::new(-0.5, 3f64.sqrt() / 2.0)).0;
        assert!((hex - C64::from_polar(1.0, std::f64::consts::FRAC_PI_3)).norm() < 1e-9);
    }

    #[test]
    fn normal_form_of_square_lattice() {
        let l = ComplexLattice::generated_by(&[C64::new(0.0, 2.0), C64::new(2.0, 2.0)], 1000).unwrap();
        let (beta, tau) = l.normal_form().unwrap();
        assert!((tau - C64::new(0.0, 1.0)).norm() < 1e-9);
        assert!(ComplexLattice::from_basis(vec![C64::new(1.0, 0.0), tau])
            .unwrap()
            .same_as(&ComplexLattice::generated_by(&[beta * C64::new(0.0, 2.0), beta * C64::new(2.0, 2.0)], 1000).unwrap(), 1e-9));
    }
}
