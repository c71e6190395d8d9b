use std::fmt;

use super::ccsd::level_checks_pass;
use super::{DecodeError, EffectiveChannel, RealMatrix, SearchSpace};
use crate::lattices::LatticeId;

/// Slack applied to radius comparisons so rounding never replaces a point
/// by an equally distant one.
pub const DISTANCE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    /// Decoded point in natural coordinate order; empty when not found.
    pub q_hat: Vec<i64>,
    pub distance_sq: f64,
    pub nodes_visited: u64,
    pub found: bool,
    /// The first point accepted by the search (the Babai point when the
    /// initial radius is infinite and no constraint rejects it).
    pub first_leaf: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceAction {
    Descend,
    Leaf,
    OutsideSphere,
    ParityFail,
    NotInCodebook,
}

impl fmt::Display for TraceAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceAction::Descend => "descend",
            TraceAction::Leaf => "leaf",
            TraceAction::OutsideSphere => "outside",
            TraceAction::ParityFail => "parity",
            TraceAction::NotInCodebook => "codebook",
        })
    }
}

/// One visit of the main step, printed as `level,value,partial_dist,action`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEvent {
    /// One-based tree level, `m` at the root down to `1` at the leaves.
    pub level: usize,
    pub value: i64,
    pub partial_dist: f64,
    pub action: TraceAction,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.level, self.value, self.partial_dist, self.action)
    }
}

/// Rewrites `y = G·t + n` with `t = scale·q + shift` as `y′ = (scale·G)·q + n`.
pub fn affine_system(g: &RealMatrix, y: &[f64], scale: f64, shift: &[f64]) -> (RealMatrix, Vec<f64>) {
    let offset = g.mul_vec(shift);
    (g.scaled(scale), y.iter().zip(offset).map(|(a, b)| a - b).collect())
}

/// PAM alphabet `u = 2q − Q + 1`.
pub fn pam_system(g: &RealMatrix, y: &[f64], q: u32) -> (RealMatrix, Vec<f64>) {
    let shift = vec![-(f64::from(q) - 1.0); g.cols()];
    affine_system(g, y, 2.0, &shift)
}

/// Sphere decoding over `Z_Q^8` restricted to the congruences of `lattice`.
/// The columns of `ch` must follow `lattice.search_order()`.
pub fn sphere_decode(
    ch: &EffectiveChannel,
    y_prime: &[f64],
    q: u32,
    lattice: LatticeId,
    c0: f64,
) -> Result<DecodeResult, DecodeError> {
    let space = SearchSpace::for_lattice(lattice, q)?;
    sphere_decode_in(ch, y_prime, &space, c0, None)
}

/// Schnorr–Euchner state of one tree level. Candidates alternate around the
/// rounded centre; a side is dropped once it leaves `0..alphabet`.
#[derive(Clone, Copy, Default)]
struct Level {
    up: i64,
    down: i64,
    step_up: bool,
}

impl Level {
    /// Starts at the rounded centre, clamped into range.
    fn start(center: f64, qmax: i64) -> (i64, Self) {
        let x = center.round() as i64;
        if x < 0 {
            (0, Level { up: 1, down: -1, step_up: true })
        } else if x > qmax {
            (qmax, Level { up: qmax + 1, down: qmax - 1, step_up: false })
        } else {
            (x, Level { up: x + 1, down: x - 1, step_up: center >= x as f64 })
        }
    }

    fn next(&mut self, qmax: i64) -> Option<i64> {
        let up_ok = self.up <= qmax;
        let down_ok = self.down >= 0;
        let take_up = match (up_ok, down_ok) {
            (false, false) => return None,
            (true, false) => true,
            (false, true) => false,
            (true, true) => self.step_up,
        };
        self.step_up = !take_up;
        if take_up {
            self.up += 1;
            Some(self.up - 1)
        } else {
            self.down -= 1;
            Some(self.down + 1)
        }
    }
}

/// Depth-first search for the closest point of `space` to `y′` in the metric
/// of `R`, starting from squared radius `c0` (use `f64::INFINITY` for none).
pub fn sphere_decode_in(
    ch: &EffectiveChannel,
    y_prime: &[f64],
    space: &SearchSpace,
    c0: f64,
    mut trace: Option<&mut Vec<TraceEvent>>,
) -> Result<DecodeResult, DecodeError> {
    space.validate()?;
    let m = ch.dim();
    if y_prime.len() != m {
        return Err(DecodeError::DimensionMismatch { expected: m, got: y_prime.len() });
    }
    if space.dim() != m {
        return Err(DecodeError::DimensionMismatch { expected: m, got: space.dim() });
    }
    let r = &ch.r;
    let qmax = i64::from(space.alphabet) - 1;
    let checks = space.checks_by_level();

    let mut x = vec![0i64; m];
    let mut levels = vec![Level::default(); m];
    let mut partial = vec![0.0; m];
    let mut feedback = vec![0.0; m];
    let mut best: Option<Vec<i64>> = None;
    let mut first_leaf = None;
    let mut dc = c0;
    let mut nodes = 0u64;

    let mut i = m - 1;
    let start = |i: usize, feedback: &[f64], x: &mut [i64], levels: &mut [Level]| {
        let (xi, level) = Level::start((y_prime[i] - feedback[i]) / r[(i, i)], qmax);
        x[i] = xi;
        levels[i] = level;
    };
    start(i, &feedback, &mut x, &mut levels);
    'search: loop {
        nodes += 1;
        let residual = y_prime[i] - feedback[i] - r[(i, i)] * x[i] as f64;
        let dist = partial[i] + residual * residual;
        let bound = if best.is_some() { dc - DISTANCE_TOLERANCE } else { dc + DISTANCE_TOLERANCE };
        let action = if dist > bound {
            TraceAction::OutsideSphere
        } else if !level_checks_pass(&checks[i], &x) {
            TraceAction::ParityFail
        } else if i > 0 {
            TraceAction::Descend
        } else if !space.leaf_allowed(&x) {
            TraceAction::NotInCodebook
        } else {
            TraceAction::Leaf
        };
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceEvent { level: i + 1, value: x[i], partial_dist: dist, action });
        }
        // Either move to a sibling at level `i` or climb until one exists.
        let mut climb = false;
        match action {
            TraceAction::OutsideSphere => climb = true,
            TraceAction::ParityFail | TraceAction::NotInCodebook => {}
            TraceAction::Descend => {
                feedback[i - 1] = (i..m).map(|j| r[(i - 1, j)] * x[j] as f64).sum();
                partial[i - 1] = dist;
                i -= 1;
                start(i, &feedback, &mut x, &mut levels);
                continue 'search;
            }
            TraceAction::Leaf => {
                dc = dist;
                if first_leaf.is_none() {
                    first_leaf = Some(space.to_natural(&x));
                }
                best = Some(x.clone());
                climb = true;
            }
        }
        loop {
            if climb {
                if i == m - 1 {
                    break 'search;
                }
                i += 1;
            }
            match levels[i].next(qmax) {
                Some(v) => {
                    x[i] = v;
                    continue 'search;
                }
                None => climb = true,
            }
        }
    }

    Ok(match best {
        Some(b) => DecodeResult {
            q_hat: space.to_natural(&b),
            distance_sq: dc,
            nodes_visited: nodes,
            found: true,
            first_leaf,
        },
        None => DecodeResult {
            q_hat: Vec::new(),
            distance_sq: f64::INFINITY,
            nodes_visited: nodes,
            found: false,
            first_leaf: None,
        },
    })
}
