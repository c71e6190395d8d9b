use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stlc::channel::{effective_channel, realify, ChannelRealization};
use stlc::decoder::{
    block_split_decode, ml_oracle, pam_system, qr_preprocess, sphere_decode, sphere_decode_in, EffectiveChannel,
    RealMatrix, SearchSpace,
};
use stlc::lattices::{member, CoeffVector, LatticeId};

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    rng.sample::<f64, _>(rand_distr::StandardNormal)
}

/// A random lattice instance: channel in search order, rotated observation
/// and the transmitted natural-order `q`.
fn instance(rng: &mut ChaCha8Rng, lattice: LatticeId, q: u32, noise: f64) -> (EffectiveChannel, Vec<f64>, Vec<i64>) {
    let h = ChannelRealization::sample(rng);
    let g = effective_channel(&h, lattice).unwrap();
    let space = SearchSpace::for_lattice(lattice, q).unwrap();
    let sent = loop {
        let v: Vec<i64> = (0..8).map(|_| rng.random_range(0..i64::from(q))).collect();
        if member(lattice, &CoeffVector(v.clone().try_into().unwrap())) {
            break v;
        }
    };
    let search: Vec<f64> = space.order.iter().map(|&k| (2 * sent[k] - i64::from(q) + 1) as f64).collect();
    let y: Vec<f64> = g.mul_vec(&search).into_iter().map(|v| v + noise * gaussian(rng)).collect();
    let (b, y) = pam_system(&g, &y, q);
    let ch = qr_preprocess(&b).unwrap();
    let yp = ch.rotate(&y).unwrap();
    (ch, yp, sent)
}

#[test]
fn qr_reconstruction_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let rows: Vec<Vec<f64>> = (0..8).map(|_| (0..8).map(|_| gaussian(&mut rng)).collect()).collect();
        let b = RealMatrix::from_rows(&rows);
        let ch = qr_preprocess(&b).unwrap();
        assert!(ch.q.mul(&ch.r).max_abs_diff(&b) < 1e-10);
        assert!(ch.q.transpose().mul(&ch.q).max_abs_diff(&RealMatrix::identity(8)) < 1e-10);
        assert!((0..8).all(|i| ch.r[(i, i)] > 0.0));
    }
}

#[test]
fn noiseless_points_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for lattice in [LatticeId::L1, LatticeId::L2, LatticeId::L4, LatticeId::L5, LatticeId::L6, LatticeId::Dast] {
        for _ in 0..20 {
            let (ch, yp, sent) = instance(&mut rng, lattice, 4, 0.0);
            let res = sphere_decode(&ch, &yp, 4, lattice, f64::INFINITY).unwrap();
            assert_eq!(res.q_hat, sent);
            assert!(res.distance_sq < 1e-18);
        }
    }
}

#[test]
fn l4_matches_oracle_on_binary_alphabet() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (ch, yp, _) = instance(&mut rng, LatticeId::L4, 2, 1.0);
        let sd = sphere_decode(&ch, &yp, 2, LatticeId::L4, f64::INFINITY).unwrap();
        let ml = ml_oracle(&ch, &yp, 2, LatticeId::L4).unwrap();
        assert!((sd.distance_sq - ml.distance_sq).abs() < 1e-9);
    }
}

#[test]
fn l6_outputs_satisfy_congruences() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let (ch, yp, _) = instance(&mut rng, LatticeId::L6, 3, 2.0);
        let res = sphere_decode(&ch, &yp, 3, LatticeId::L6, f64::INFINITY).unwrap();
        assert!(member(LatticeId::L6, &CoeffVector(res.q_hat.try_into().unwrap())));
    }
}

#[test]
fn finite_radius_above_optimum_gives_same_answer() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for lattice in [LatticeId::L2, LatticeId::L5] {
        for _ in 0..100 {
            let (ch, yp, _) = instance(&mut rng, lattice, 3, 1.0);
            let free = sphere_decode(&ch, &yp, 3, lattice, f64::INFINITY).unwrap();
            let bounded = sphere_decode(&ch, &yp, 3, lattice, free.distance_sq * 1.5 + 1e-9).unwrap();
            assert_eq!(free.q_hat, bounded.q_hat);
            assert!(bounded.nodes_visited <= free.nodes_visited);
            let tight = sphere_decode(&ch, &yp, 3, lattice, free.distance_sq * 0.5).unwrap();
            assert!(!tight.found || tight.distance_sq <= free.distance_sq);
        }
    }
}

#[test]
fn node_counts_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (ch, yp, _) = instance(&mut rng, LatticeId::L6, 4, 1.5);
    let a = sphere_decode(&ch, &yp, 4, LatticeId::L6, f64::INFINITY).unwrap();
    let b = sphere_decode(&ch, &yp, 4, LatticeId::L6, f64::INFINITY).unwrap();
    assert_eq!(a, b);
}

#[test]
fn babai_point_comes_first() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (ch, yp, _) = instance(&mut rng, LatticeId::L2, 4, 1.0);
        // successive rounding with clamping, from the last coordinate up
        let mut x = vec![0i64; 8];
        for i in (0..8).rev() {
            let fb: f64 = (i + 1..8).map(|j| ch.r[(i, j)] * x[j] as f64).sum();
            x[i] = ((yp[i] - fb) / ch.r[(i, i)]).round().clamp(0.0, 3.0) as i64;
        }
        let res = sphere_decode_in(&ch, &yp, &SearchSpace::unconstrained(4, 8), f64::INFINITY, None).unwrap();
        assert_eq!(res.first_leaf.unwrap(), x);
    }
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

#[test]
fn block_split_agrees_with_full_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut split_nodes, mut full_nodes) = (0u64, 0u64);
    for _ in 0..1000 {
        let h: [Complex64; 4] = std::array::from_fn(|_| random_complex(&mut rng));
        let q: Vec<i64> = (0..8).map(|_| rng.random_range(0..2)).collect();
        let x = CoeffVector(std::array::from_fn(|k| 2 * q[k] - 1));
        let g = effective_channel(&ChannelRealization::new(h), LatticeId::L2).unwrap();
        let clean = g.mul_vec(&x.0.map(|v| v as f64));
        let y: [Complex64; 4] =
            std::array::from_fn(|k| Complex64::new(clean[k], clean[k + 4]) + random_complex(&mut rng) * 0.5);
        let split = block_split_decode(&h, &y, 2, LatticeId::L2).unwrap();
        let (b, ya) = pam_system(&g, &realify(&y), 2);
        let ch = qr_preprocess(&b).unwrap();
        let full = sphere_decode(&ch, &ch.rotate(&ya).unwrap(), 2, LatticeId::L2, f64::INFINITY).unwrap();
        assert_eq!(split.q_hat, full.q_hat);
        assert!((split.distance_sq - full.distance_sq).abs() < 1e-9);
        split_nodes += split.nodes_visited;
        full_nodes += full.nodes_visited;
    }
    assert!(split_nodes <= full_nodes, "{split_nodes} > {full_nodes}");
    assert!(block_split_decode(&[Complex64::new(1.0, 0.0); 4], &[Complex64::new(0.0, 0.0); 4], 2, LatticeId::L4).is_err());
}
