use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stlc::channel::{
    basis_matrix, effective_channel, realify, run_bler, sensitivity_metric, ChannelRealization, Codebook,
    SensitivityFamily, SimConfig,
};
use stlc::decoder::qr_preprocess;
use stlc::lattices::LatticeId;

#[test]
fn effective_channel_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for lattice in [LatticeId::L1, LatticeId::L2, LatticeId::L5, LatticeId::Dast] {
        for _ in 0..200 {
            let h = ChannelRealization::sample(&mut rng);
            let x: Vec<i64> = (0..8).map(|_| rng.random_range(-5..=5)).collect();
            let mut codeword = [[Complex64::new(0.0, 0.0); 4]; 4];
            for (k, &v) in x.iter().enumerate() {
                let b = basis_matrix(lattice, k).unwrap();
                for r in 0..4 {
                    for c in 0..4 {
                        codeword[r][c] += b[r][c] * v as f64;
                    }
                }
            }
            let direct = realify(&h.apply(&codeword));
            let order = lattice.search_order();
            let search: Vec<f64> = order.iter().map(|&k| x[k] as f64).collect();
            let via = effective_channel(&h, lattice).unwrap().mul_vec(&search);
            for (a, b) in direct.iter().zip(via) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn halves_are_orthogonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let g = effective_channel(&ChannelRealization::sample(&mut rng), LatticeId::L2).unwrap();
        for a in 0..4 {
            for b in 4..8 {
                let dot: f64 = g.column(a).iter().zip(g.column(b)).map(|(x, y)| x * y).sum();
                assert!(dot.abs() < 1e-10);
            }
        }
    }
}

#[test]
fn projections_decompose_the_channel() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let h = ChannelRealization::sample(&mut rng);
        for family in [SensitivityFamily::Quaternionic, SensitivityFamily::Cyclotomic, SensitivityFamily::Dast] {
            let total: f64 = family
                .components()
                .iter()
                .flat_map(|space| space.iter())
                .map(|v| {
                    let inner: Complex64 = h.h.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
                    inner.norm_sqr() / v.iter().map(Complex64::norm_sqr).sum::<f64>()
                })
                .sum();
            assert!((total - h.norm_sqr()).abs() < 1e-12);
        }
    }
}

/// Points on a collapse set are rank deficient; generic points are not.
#[test]
fn collapse_iff_rank_deficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (lattice, family) in [
        (LatticeId::L2, SensitivityFamily::Quaternionic),
        (LatticeId::L6, SensitivityFamily::Quaternionic),
        (LatticeId::L1, SensitivityFamily::Cyclotomic),
        (LatticeId::Dast, SensitivityFamily::Dast),
    ] {
        let spaces = family.components();
        for drop in 0..spaces.len() {
            // random combination of every component except `drop`
            let mut h = [Complex64::new(0.0, 0.0); 4];
            for (s, space) in spaces.iter().enumerate().filter(|(s, _)| *s != drop) {
                let _ = s;
                for v in space {
                    let a = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    for k in 0..4 {
                        h[k] += a * v[k];
                    }
                }
            }
            let h = ChannelRealization::new(h);
            assert!(sensitivity_metric(&h, family) < 1e-20);
            assert!(qr_preprocess(&effective_channel(&h, lattice).unwrap()).is_err(), "{lattice} drop {drop}");
        }
        for _ in 0..100 {
            let h = ChannelRealization::sample(&mut rng);
            assert!(sensitivity_metric(&h, family) > 0.0);
            assert!(qr_preprocess(&effective_channel(&h, lattice).unwrap()).is_ok());
        }
    }
}

#[test]
fn simulation_is_reproducible() {
    let mut cfg = SimConfig::new(LatticeId::L5, 3, vec![5.0, 10.0], 3000, 99);
    cfg.target_errors = Some(50);
    assert_eq!(run_bler(&cfg).unwrap(), run_bler(&cfg).unwrap());
    cfg.codebook = Codebook::Shortest { k: 256, offset: true };
    assert_eq!(run_bler(&cfg).unwrap(), run_bler(&cfg).unwrap());
}

#[test]
fn thread_count_does_not_change_results() {
    let cfg = SimConfig::new(LatticeId::L2, 2, vec![4.0], 3000, 5);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run_bler(&cfg).unwrap());
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run_bler(&cfg).unwrap());
    assert_eq!(one, four);
}

/// BLER should not increase with SNR beyond what sampling noise allows.
#[test]
fn bler_decreases_with_snr() {
    let cfg = SimConfig::new(LatticeId::L4, 2, vec![0.0, 4.0, 8.0, 12.0], 4000, 17);
    let points = run_bler(&cfg).unwrap();
    for w in points.windows(2) {
        let (p1, p2) = (w[0].bler, w[1].bler);
        let se = (p1 * (1.0 - p1) / w[0].trials as f64 + p2 * (1.0 - p2) / w[1].trials as f64).sqrt();
        assert!(p2 <= p1 + 3.0 * se, "{points:?}");
    }
    assert!(points[0].bler > points[3].bler);
}
