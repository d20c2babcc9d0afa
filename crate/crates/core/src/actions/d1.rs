//! Discrete subgroups of C² up to `GL(2, C)`.
//!
//! A rank 3 subgroup spans a real hyperplane `W` containing the complex
//! line `W ∩ iW`. The real functional `v ↦ ⟨v, i n⟩` (with `n` normal to
//! `W`) kills that line, so the subgroup meets it in a lattice exactly when
//! the functional takes commensurable values on the generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{discrete_basis, ComplexLattice};
use crate::linalg::{self, Mat2};
use crate::rational::{self, column_reduce};
use crate::scalar::Cx;
use crate::tolerance::{DENOMINATOR_BOUND, RANK_THRESHOLD};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum D1Label {
    D1,
    D1_1,
    D1_2,
    D1_3,
    D1_4,
    D1_5,
    D1_6,
}

impl D1Label {
    pub fn as_str(self) -> &'static str {
        match self {
            D1Label::D1 => "D1",
            D1Label::D1_1 => "D1_1",
            D1Label::D1_2 => "D1_2",
            D1Label::D1_3 => "D1_3",
            D1Label::D1_4 => "D1_4",
            D1Label::D1_5 => "D1_5",
            D1Label::D1_6 => "D1_6",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct D1Classification {
    pub label: D1Label,
    pub rank: usize,
    /// Generators of `A π` in the table's shape.
    pub generators: Vec<[Cx; 2]>,
    /// `A` with `A π` the normal form.
    #[serde(with = "linalg::mat2")]
    pub normalizer: Mat2,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::scalar::opt_cx")]
    pub tau: Option<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::scalar::opt_cx")]
    pub sigma: Option<C64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

type V2 = [C64; 2];

fn to_real(v: &V2) -> Vec<f64> {
    vec![v[0].re, v[0].im, v[1].re, v[1].im]
}

fn from_real(v: &[f64]) -> V2 {
    [C64::new(v[0], v[1]), C64::new(v[2], v[3])]
}

fn det(a: &V2, b: &V2) -> C64 {
    a[0] * b[1] - a[1] * b[0]
}

fn apply(m: &Mat2, v: &V2) -> V2 {
    [m[(0, 0)] * v[0] + m[(0, 1)] * v[1], m[(1, 0)] * v[0] + m[(1, 1)] * v[1]]
}

fn columns_inverse(a: &V2, b: &V2) -> Result<Mat2> {
    Mat2::new(a[0], b[0], a[1], b[1])
        .try_inverse()
        .ok_or(Error::NotDiscrete)
}

/// Real normal of the hyperplane spanned by three vectors of R⁴.
fn normal(vs: &[Vec<f64>]) -> [f64; 4] {
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let m = |r: usize, c: usize| vs[r][cols[c]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    let mut n = [0.0; 4];
    for (i, x) in n.iter_mut().enumerate() {
        *x = if i % 2 == 0 { minor(i) } else { -minor(i) };
    }
    let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    n.map(|x| x / len)
}

/// Index pair with the largest `|det|`, preferring the earliest on ties.
fn best_pair(b: &[V2]) -> (usize, usize) {
    let mut best = (0, 1, -1.0);
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let d = det(&b[i], &b[j]).norm() / (norm(&b[i]) * norm(&b[j]));
            if d > best.2 + 1e-12 {
                best = (i, j, d);
            }
        }
    }
    (best.0, best.1)
}

fn norm(v: &V2) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

fn cx2(v: &V2) -> [Cx; 2] {
    [v[0].into(), v[1].into()]
}

/// Classify with the default denominator bound.
pub fn classify_d1_subgroup(gens: &[V2]) -> Result<D1Classification> {
    classify_d1_subgroup_with_bound(gens, DENOMINATOR_BOUND)
}

pub fn classify_d1_subgroup_with_bound(gens: &[V2], max_den: u64) -> Result<D1Classification> {
    let vs: Vec<Vec<f64>> = gens.iter().map(to_real).collect();
    let basis = discrete_basis(&vs, max_den)?;
    let b: Vec<V2> = basis.vectors.iter().map(|v| from_real(v)).collect();
    let rank = b.len();
    let mut out = D1Classification {
        label: D1Label::D1,
        rank,
        generators: vec![],
        normalizer: Mat2::identity(),
        tau: None,
        sigma: None,
        warning: None,
    };
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    match rank {
        0 => {}
        1 => {
            let u = if b[0][0].norm() >= b[0][1].norm() { [zero, one] } else { [one, zero] };
            out.label = D1Label::D1_1;
            out.normalizer = columns_inverse(&b[0], &u)?;
            out.generators = vec![cx2(&[one, zero])];
        }
        2 => {
            let d = det(&b[0], &b[1]).norm() / (norm(&b[0]) * norm(&b[1]));
            if d > RANK_THRESHOLD {
                out.label = D1Label::D1_2;
                out.normalizer = columns_inverse(&b[0], &b[1])?;
                out.generators = vec![cx2(&[one, zero]), cx2(&[zero, one])];
            } else {
                let k = if b[0][0].norm() >= b[0][1].norm() { 0 } else { 1 };
                let ratio = b[1][k] / b[0][k];
                let (beta, tau) = ComplexLattice::from_basis(vec![one, ratio])?
                    .normal_form()
                    .ok_or(Error::NotDiscrete)?;
                let u = if k == 0 { [zero, one] } else { [one, zero] };
                let a = columns_inverse(&b[0], &u)?;
                out.label = D1Label::D1_3;
                out.normalizer = Mat2::new(beta, zero, zero, one) * a;
                out.tau = Some(tau);
                out.generators = vec![cx2(&[one, zero]), cx2(&[tau, zero])];
            }
        }
        3 => classify_rank3(&b, &basis.vectors, max_den, &mut out)?,
        4 => {
            let (i, j) = best_pair(&b);
            let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
            let a = columns_inverse(&b[i], &b[j])?;
            let mut c1 = apply(&a, &b[rest[0]]);
            let mut c2 = apply(&a, &b[rest[1]]);
            let im_det = c1[0].im * c2[1].im - c2[0].im * c1[1].im;
            if im_det.abs() < RANK_THRESHOLD {
                return Err(Error::NotDiscrete);
            }
            if im_det < 0.0 {
                std::mem::swap(&mut c1, &mut c2);
            }
            out.label = D1Label::D1_6;
            out.normalizer = a;
            out.generators = vec![cx2(&[one, zero]), cx2(&[zero, one]), cx2(&c1), cx2(&c2)];
        }
        _ => return Err(Error::NotDiscrete),
    }
    Ok(out)
}

fn classify_rank3(b: &[V2], real: &[Vec<f64>], max_den: u64, out: &mut D1Classification) -> Result<()> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let n = normal(real);
    // i·n in real coordinates
    let jn = [-n[1], n[0], -n[3], n[2]];
    let phi: Vec<f64> = real
        .iter()
        .map(|v| v.iter().zip(&jn).map(|(x, y)| x * y).sum())
        .collect();
    let scale = real.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).fold(0.0, f64::max);
    let r = (0..3)
        .max_by(|&x, &y| phi[x].abs().total_cmp(&phi[y].abs()))
        .unwrap();
    if phi[r].abs() <= RANK_THRESHOLD * scale {
        return Err(Error::NotDiscrete);
    }
    let ratios: Option<Vec<rational::Ratio>> = phi
        .iter()
        .map(|p| {
            let x = p / phi[r];
            if x.abs() < RANK_THRESHOLD {
                Some(rational::Ratio { num: 0, den: 1 })
            } else {
                rational::reconstruct(x, max_den)
            }
        })
        .collect();
    match ratios {
        Some(q) => {
            let l = rational::lcm_all(q.iter().map(|x| x.den));
            let m: Vec<i64> = q.iter().map(|x| (x.num as i128 * (l / x.den as i128)) as i64).collect();
            let (_, u) = column_reduce(&m);
            let combo = |j: usize| -> V2 {
                let mut v = [zero, zero];
                for i in 0..3 {
                    v[0] += b[i][0] * u[i][j] as f64;
                    v[1] += b[i][1] * u[i][j] as f64;
                }
                v
            };
            let (w1, w2, e) = (combo(0), combo(1), combo(2));
            let k = if w1[0].norm() >= w1[1].norm() { 0 } else { 1 };
            let ratio = w2[k] / w1[k];
            let (beta, tau) = ComplexLattice::from_basis(vec![one, ratio])?
                .normal_form()
                .ok_or(Error::NotDiscrete)?;
            let a = columns_inverse(&w1, &e)?;
            out.label = D1Label::D1_4;
            out.normalizer = Mat2::new(beta, zero, zero, one) * a;
            out.tau = Some(tau);
            out.sigma = Some(zero);
            out.generators = vec![cx2(&[one, zero]), cx2(&[tau, zero]), cx2(&[zero, one])];
        }
        None => {
            let (i, j) = best_pair(b);
            let k = 3 - i - j;
            let a = columns_inverse(&b[i], &b[j])?;
            let ts = apply(&a, &b[k]);
            out.label = D1Label::D1_5;
            out.normalizer = a;
            out.tau = Some(ts[0]);
            out.sigma = Some(ts[1]);
            if ts[1].norm() <= RANK_THRESHOLD {
                out.warning = Some(format!("|sigma| = {:e} is at the rank threshold", ts[1].norm()));
            }
            out.generators = vec![cx2(&[one, zero]), cx2(&ts), cx2(&[zero, one])];
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn label(gens: &[V2]) -> D1Label {
        classify_d1_subgroup(gens).unwrap().label
    }

    #[test]
    fn table_rows() {
        let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
        assert_eq!(label(&[]), D1Label::D1);
        assert_eq!(label(&[[o, z]]), D1Label::D1_1);
        assert_eq!(label(&[[o, z], [z, o]]), D1Label::D1_2);
        assert_eq!(label(&[[o, z], [i, z]]), D1Label::D1_3);
        assert_eq!(label(&[[o, z], [i, z], [z, o]]), D1Label::D1_4);
        assert_eq!(label(&[[o, z], [i, c(2f64.sqrt(), 0.0)], [z, o]]), D1Label::D1_5);
        // (i, 1) - (0, 1) = (i, 0): the group meets C × 0 in Z[1, i]
        assert_eq!(label(&[[o, z], [i, o], [z, o]]), D1Label::D1_4);
        assert_eq!(label(&[[o, z], [i, z], [z, o], [z, i]]), D1Label::D1_6);
    }

    #[test]
    fn normalizer_maps_onto_normal_form() {
        let (r2, r3, e) = (2f64.sqrt(), 3f64.sqrt(), std::f64::consts::E);
        let gens = [[c(r2, 1.0), c(0.5, 0.0)], [c(-1.0, r3), c(1.0, e)], [c(0.2, 0.1), c(e, -0.4)]];
        let r = classify_d1_subgroup(&gens).unwrap();
        assert_eq!(r.label, D1Label::D1_5);
        let target: Vec<V2> = r.generators.iter().map(|g| [g[0].into(), g[1].into()]).collect();
        let image: Vec<Vec<f64>> = gens.iter().map(|g| to_real(&apply(&r.normalizer, g))).collect();
        let mut all = image.clone();
        all.extend(target.iter().map(to_real));
        assert_eq!(discrete_basis(&all, 1000).unwrap().rank(), 3);
    }

    #[test]
    fn dense_input_is_rejected() {
        let gens = [[c(1.0, 0.0), c(0.0, 0.0)], [c(2f64.sqrt(), 0.0), c(0.0, 0.0)]];
        assert!(classify_d1_subgroup(&gens).is_err());
    }
}
