use crowdtrust_core::simulate::TwoCoinScenario;
use crowdtrust_core::{
    decide_binary, default_eta, em_infer, encode_binary, exponential_weighted, fuse, majority_votes, split_queries,
    weighted_averaging, AnswerKey, EmConfig, LabelAlphabet, LabelId, ObservationMatrix, TrustWeights,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binary() -> LabelAlphabet {
    LabelAlphabet::new(["neg", "pos"]).unwrap()
}

#[test]
fn majority_matches_uniform_fusion_exhaustively() {
    let (neg, pos) = (LabelId::new(0), LabelId::new(1));
    let mut checked = 0;
    for m in 1..=3usize {
        for n in 1..=3usize {
            let cells = m * n;
            for code in 0..3usize.pow(cells as u32) {
                let mut entries = Vec::new();
                let mut c = code;
                for k in 0..cells {
                    match c % 3 {
                        1 => entries.push((k / n, k % n, neg)),
                        2 => entries.push((k / n, k % n, pos)),
                        _ => {}
                    }
                    c /= 3;
                }
                let matrix = ObservationMatrix::new(m, n, binary(), entries).unwrap();
                let (_, votes) = majority_votes(&matrix).unwrap();
                let signed = encode_binary(&matrix, "pos").unwrap();
                let scores = fuse(&signed, &TrustWeights::uniform(m, crowdtrust_core::MethodTag::MajorityVotes)).unwrap();
                for (q, s) in scores.into_iter().enumerate() {
                    assert_eq!(votes.prediction(q), Some(decide_binary(s, pos, neg)), "m={m} n={n} code={code}");
                }
                checked += 1;
            }
        }
    }
    // Σ over m, n ≤ 3 of 3^(mn)
    assert_eq!(checked, 3 + 9 + 27 + 9 + 81 + 729 + 27 + 729 + 19683);
}

#[test]
fn em_recovers_two_coin_parameters() {
    let config = EmConfig::default();
    for seed in 0..5u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let alpha: Vec<f64> = (0..50).map(|_| rng.gen_range(0.55..0.95)).collect();
        let beta: Vec<f64> = (0..50).map(|_| rng.gen_range(0.55..0.95)).collect();
        let scenario =
            TwoCoinScenario { alpha: alpha.clone(), beta: beta.clone(), prevalence: 0.5, participation: 1.0, num_queries: 2000, seed };
        let (matrix, key) = scenario.generate().unwrap();
        let (model, result) = em_infer(&matrix, None, &config).unwrap();

        let mae = alpha.iter().zip(&model.alpha).chain(beta.iter().zip(&model.beta)).map(|(a, b)| (a - b).abs()).sum::<f64>()
            / 100.0;
        assert!(mae <= 0.05, "seed {seed}: mae {mae}");
        let all: Vec<usize> = (0..2000).collect();
        let acc = crowdtrust_core::accuracy(&result, &key, &all).unwrap();
        assert!(acc >= 0.99, "seed {seed}: accuracy {acc}");
        for pair in model.log_likelihood.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-9, "seed {seed}: {pair:?}");
        }
        assert!(!model.flipped);
    }
}

#[test]
fn em_with_skewed_prevalence_and_half_participation() {
    let scenario = TwoCoinScenario {
        alpha: vec![0.9; 9],
        beta: vec![0.8; 9],
        prevalence: 0.3,
        participation: 0.5,
        num_queries: 400,
        seed: 8,
    };
    let (matrix, key) = scenario.generate().unwrap();
    let (model, result) = em_infer(&matrix, None, &EmConfig::default()).unwrap();
    let all: Vec<usize> = (0..400).collect();
    assert!(crowdtrust_core::accuracy(&result, &key, &all).unwrap() > 0.9);
    assert!((model.prevalence - 0.3).abs() < 0.08);
}

#[test]
fn hedge_two_agent_recurrence() {
    // Agent 0 is always right, agent 1 always wrong, over three queries:
    // v = (1, e^{-3 eta}) before normalization.
    let entries = (0..3).flat_map(|q| [(0, q, "pos"), (1, q, "neg")]);
    let matrix = ObservationMatrix::from_named(2, 3, binary(), entries).unwrap();
    let key = AnswerKey::new(3, &binary(), (0..3).map(|q| (q, LabelId::new(1)))).unwrap();
    let w = exponential_weighted(&matrix, &key, &[0, 1, 2], 1.0).unwrap();
    let e3 = (3.0f64).exp();
    assert!((w.weights[0] - e3 / (e3 + 1.0)).abs() <= 1e-12);
    assert!((w.weights[1] - 1.0 / (e3 + 1.0)).abs() <= 1e-12);
}

#[test]
fn hedge_and_weighted_averaging_rank_agents_alike() {
    let scenario = TwoCoinScenario {
        alpha: vec![0.95, 0.8, 0.7, 0.6, 0.5],
        beta: vec![0.95, 0.8, 0.7, 0.6, 0.5],
        prevalence: 0.5,
        participation: 1.0,
        num_queries: 120,
        seed: 5,
    };
    let (matrix, key) = scenario.generate().unwrap();
    let split = split_queries(&key, 60, 5).unwrap();
    let eta = default_eta(5, split.train.len());
    let hedge = exponential_weighted(&matrix, &key, &split.train, eta).unwrap();
    let wa = weighted_averaging(&matrix, &key, &split.train).unwrap();
    for i in 0..5 {
        for k in 0..5 {
            assert_eq!(hedge.weights[i] > hedge.weights[k], wa.weights[i] > wa.weights[k]);
        }
    }
}
