//! Cross-check suite behind `metrized-green verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{MetrizedGraph, Point};
use crate::green::{green_can, tau_constant, tau_constant_from, value_matrix};
use crate::network::Network;
use crate::oracle::{oracle_resistance, oracle_tau};
use crate::pointwise::resistance_points;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub pairs: usize,
    pub tau_k: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            pairs: 100,
            tau_k: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub mode: &'static str,
    pub pairs: usize,
    /// pointwise formulas vs. subdivision oracle
    pub max_resistance_deviation: f64,
    /// `r(x,y)` vs. `r(y,x)`
    pub max_symmetry_deviation: f64,
    /// value matrix evaluation vs. `τ - r/2`
    pub max_value_matrix_deviation: f64,
    /// `τ` from every base vertex vs. base vertex 0
    pub max_tau_base_deviation: f64,
    pub tau: String,
    pub tau_k: usize,
    pub oracle_tau: f64,
    pub oracle_tau_relative_error: f64,
    pub oracle_tau_relative_error_double_k: f64,
}

impl VerificationReport {
    /// Whether every exact check agrees to `tolerance` (zero is expected in
    /// rational mode) and the quadrature is within `tau_tolerance`.
    pub fn passes(&self, tolerance: f64, tau_tolerance: f64) -> bool {
        self.max_resistance_deviation <= tolerance
            && self.max_symmetry_deviation <= tolerance
            && self.max_value_matrix_deviation <= tolerance
            && self.max_tau_base_deviation <= tolerance
            && self.oracle_tau_relative_error <= tau_tolerance
    }
}

/// A point at a random rational fraction `m/d` (d ≤ 6) of a random edge.
pub fn random_point<S: Scalar, R: Rng>(graph: &MetrizedGraph<S>, rng: &mut R) -> Point<S> {
    let e = rng.gen_range(0..graph.edge_count());
    let d = rng.gen_range(1..=6i64);
    let m = rng.gen_range(0..=d);
    let offset = graph.edge(e).length.clone() * S::from_ratio(m, d);
    graph
        .canonicalize(&Point::on_edge(e, offset))
        .expect("offset within edge")
}

fn relative(a: &impl Scalar, b: &impl Scalar) -> f64 {
    let (a, b) = (a.to_f64(), b.to_f64());
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn deviation<S: Scalar>(a: &S, b: &S) -> f64 {
    if S::EXACT {
        if a == b {
            0.0
        } else {
            relative(a, b).max(f64::MIN_POSITIVE)
        }
    } else {
        relative(a, b)
    }
}

pub fn verify<S: Scalar>(net: &Network<S>, config: &VerifyConfig) -> Result<VerificationReport> {
    let graph = net.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let tau = tau_constant(net);
    let z = value_matrix(net, &tau);
    let mut report = VerificationReport {
        mode: S::MODE,
        pairs: config.pairs,
        max_resistance_deviation: 0.0,
        max_symmetry_deviation: 0.0,
        max_value_matrix_deviation: 0.0,
        max_tau_base_deviation: 0.0,
        tau: tau.to_text(),
        tau_k: config.tau_k,
        oracle_tau: f64::NAN,
        oracle_tau_relative_error: f64::NAN,
        oracle_tau_relative_error_double_k: f64::NAN,
    };
    for _ in 0..config.pairs {
        let x = random_point(graph, &mut rng);
        let y = random_point(graph, &mut rng);
        let r = resistance_points(net, &x, &y)?;
        let oracle = oracle_resistance(graph, &[x.clone(), y.clone()])?;
        let dev = |a: &S, b: &S| deviation(a, b);
        report.max_resistance_deviation = report
            .max_resistance_deviation
            .max(dev(&r, &oracle[(0, 1)]));
        report.max_symmetry_deviation = report
            .max_symmetry_deviation
            .max(dev(&r, &resistance_points(net, &y, &x)?));
        report.max_value_matrix_deviation = report
            .max_value_matrix_deviation
            .max(dev(&green_can(net, &tau, &x, &y)?, &z.evaluate(&x, &y)?));
    }
    for base in 0..graph.vertex_count() {
        report.max_tau_base_deviation = report
            .max_tau_base_deviation
            .max(deviation(&tau, &tau_constant_from(net, base)));
    }
    // quadrature always runs in float mode
    let float_graph = graph.map_lengths(|l| l.to_f64());
    let tau_f = tau.to_f64();
    let coarse = oracle_tau(&float_graph, config.tau_k)?;
    let fine = oracle_tau(&float_graph, 2 * config.tau_k)?;
    report.oracle_tau = coarse;
    report.oracle_tau_relative_error = (coarse - tau_f).abs() / tau_f;
    report.oracle_tau_relative_error_double_k = (fine - tau_f).abs() / tau_f;
    Ok(report)
}
