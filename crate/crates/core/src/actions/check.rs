use rand::RngCore;
use serde::Serialize;

use super::GroupAction;

/// Outcome of a sampled identity check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn new(check: impl Into<String>, tolerance: f64) -> Self {
        CheckResult {
            check: check.into(),
            samples: 0,
            max_error: 0.0,
            tolerance,
            passed: true,
            first_failure: None,
        }
    }

    /// Record one sample's error.
    pub fn record(&mut self, err: f64, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if err.is_nan() || err > self.max_error {
            self.max_error = if err.is_nan() { f64::INFINITY } else { err };
        }
        if err.is_nan() || err > self.tolerance {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.passed = false;
        if self.first_failure.is_none() {
            self.first_failure = Some(msg);
        }
    }

    /// Record a sample from a fallible computation.
    pub fn record_result(&mut self, r: crate::error::Result<f64>, what: &str) {
        match r {
            Ok(e) => self.record(e, || format!("{what}: error {e:e}")),
            Err(e) => {
                self.samples += 1;
                self.max_error = f64::INFINITY;
                self.fail(format!("{what}: {e}"));
            }
        }
    }
}

/// Associativity, two-sided identity and two-sided inverses on random triples.
pub fn group_axioms<A: GroupAction>(a: &A, rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
    let mut out = CheckResult::new("group axioms", tol);
    let e = a.identity();
    for _ in 0..samples {
        let (g, h, k) = (a.random_element(rng), a.random_element(rng), a.random_element(rng));
        let r = (|| {
            let left = a.multiply(&a.multiply(&g, &h)?, &k)?;
            let right = a.multiply(&g, &a.multiply(&h, &k)?)?;
            let gi = a.inverse(&g)?;
            Ok([
                a.element_distance(&left, &right),
                a.element_distance(&a.multiply(&e, &g)?, &g),
                a.element_distance(&a.multiply(&g, &e)?, &g),
                a.element_distance(&a.multiply(&g, &gi)?, &e),
                a.element_distance(&a.multiply(&gi, &g)?, &e),
            ]
            .into_iter()
            .fold(0.0, f64::max))
        })();
        out.record_result(r, "group axioms");
    }
    out
}

/// `e·x = x` and `(g h)·x = g·(h·x)` on random samples.
pub fn action_axioms<A: GroupAction>(a: &A, rng: &mut dyn RngCore, samples: usize, tol: f64) -> CheckResult {
    let mut out = CheckResult::new("action axiom", tol);
    let e = a.identity();
    for _ in 0..samples {
        let (g, h, x) = (a.random_element(rng), a.random_element(rng), a.random_point(rng));
        let r = (|| {
            let lhs = a.act(&a.multiply(&g, &h)?, &x)?;
            let rhs = a.act(&g, &a.act(&h, &x)?)?;
            Ok(a.point_distance(&lhs, &rhs).max(a.point_distance(&a.act(&e, &x)?, &x)))
        })();
        out.record_result(r, "action axiom");
    }
    out
}

/// Every sampled non-identity element moves at least one of `probes` random points.
/// The recorded error is the reciprocal of the largest displacement.
pub const FAITHFULNESS: &str = "faithfulness";

pub fn faithfulness<A: GroupAction>(a: &A, rng: &mut dyn RngCore, samples: usize, probes: usize) -> CheckResult {
    let mut out = CheckResult::new(FAITHFULNESS, 1e6);
    let e = a.identity();
    let xs: Vec<A::Point> = (0..probes).map(|_| a.random_point(rng)).collect();
    for _ in 0..samples {
        let g = a.random_element(rng);
        if a.element_distance(&g, &e) < 1e-6 {
            continue;
        }
        let r = xs.iter().try_fold(0.0f64, |m, x| Ok(m.max(a.point_distance(&a.act(&g, x)?, x))));
        out.record_result(r.map(|m: f64| 1.0 / m), FAITHFULNESS);
    }
    out
}
