use num_complex::Complex64;

use super::{pam_system, qr_preprocess, sphere_decode_in, DecodeError, DecodeResult, SearchSpace};
use crate::channel::{effective_channel, realify, ChannelRealization};
use crate::lattices::LatticeId;

/// Decodes the `(c1, c2)` and `(c3, c4)` halves of an L2 codeword separately.
///
/// The two halves reach the receiver along orthogonal real subspaces, so the
/// 8-dimensional search factors into two 4-dimensional ones. `y` is the
/// received row `hX + n` for PAM coordinates `u = 2q − Q + 1`.
pub fn block_split_decode(h: &[Complex64; 4], y: &[Complex64; 4], q: u32, lattice: LatticeId) -> Result<DecodeResult, DecodeError> {
    if lattice != LatticeId::L2 {
        return Err(DecodeError::Unsupported(lattice));
    }
    let g = effective_channel(&ChannelRealization::new(*h), lattice).map_err(|_| DecodeError::Unsupported(lattice))?;
    let (b, y_adj) = pam_system(&g, &realify(y), q);
    let space = SearchSpace::unconstrained(q, 4);
    let mut q_hat = Vec::with_capacity(8);
    let mut distance_sq = 0.0;
    let mut nodes_visited = 0;
    let mut first_leaf = Vec::with_capacity(8);
    for half in [[0, 1, 2, 3], [4, 5, 6, 7]] {
        let ch = qr_preprocess(&b.select_columns(&half))?;
        let res = sphere_decode_in(&ch, &ch.rotate(&y_adj)?, &space, f64::INFINITY, None)?;
        nodes_visited += res.nodes_visited;
        distance_sq += res.distance_sq;
        q_hat.extend(res.q_hat);
        first_leaf.extend(res.first_leaf.unwrap_or_default());
    }
    Ok(DecodeResult { q_hat, distance_sq, nodes_visited, found: true, first_leaf: Some(first_leaf) })
}
