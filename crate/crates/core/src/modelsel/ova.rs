use alloc::vec;
use alloc::vec::Vec;

use super::loocv::{train_view, CvConfig, CvReport, LambdaChoice};
use crate::aggregators::{fit_two_coin, EmConfig, TwoCoinModel};
use crate::alphabet::{LabelAlphabet, LabelId};
use crate::answers::AnswerKey;
use crate::error::{bail, Result};
use crate::fusion::{FusionResult, TrustWeights};
use crate::matrix::{encode_binary_id, ObservationMatrix};
use crate::optim::Penalty;

/// Binary model for "this label vs the rest".
#[derive(Debug, Clone, PartialEq)]
pub struct ClassModel {
    pub label: LabelId,
    pub weights: TrustWeights,
    pub lambda: f64,
    pub cv: Option<CvReport>,
}

/// One binary hinge model per label.
#[derive(Debug, Clone, PartialEq)]
pub struct OneVsAllModel {
    pub alphabet: LabelAlphabet,
    pub classes: Vec<ClassModel>,
}

/// Trains one binary model per label; each picks its own lambda.
pub fn one_vs_all_train(
    matrix: &ObservationMatrix,
    key: &AnswerKey,
    train: &[usize],
    penalty: Penalty,
    choice: &LambdaChoice,
    config: &CvConfig,
) -> Result<OneVsAllModel> {
    let alphabet = matrix.alphabet();
    if alphabet.len() < 3 {
        bail!(Argument, "one-vs-all needs at least three labels; use the binary path for two");
    }
    train_all_classes(matrix, key, train, penalty, choice, config)
}

pub(crate) fn train_all_classes(
    matrix: &ObservationMatrix,
    key: &AnswerKey,
    train: &[usize],
    penalty: Penalty,
    choice: &LambdaChoice,
    config: &CvConfig,
) -> Result<OneVsAllModel> {
    let alphabet = matrix.alphabet();
    let classes = alphabet
        .ids()
        .map(|label| {
            let signed = encode_binary_id(matrix, label);
            let model = train_view(&signed, key, train, label, penalty, choice, config)?;
            Ok(ClassModel { label, weights: model.weights, lambda: model.lambda, cv: model.cv })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OneVsAllModel { alphabet: alphabet.clone(), classes })
}

/// Scores every label with its own model on its own encoding and predicts
/// the argmax (smallest label on ties).
pub fn one_vs_all_predict(model: &OneVsAllModel, matrix: &ObservationMatrix, queries: &[usize]) -> Result<FusionResult> {
    if &model.alphabet != matrix.alphabet() {
        bail!(Alphabet, "model and matrix alphabets differ");
    }
    if let Some(c) = model.classes.iter().find(|c| c.weights.len() != matrix.num_agents()) {
        bail!(Shape, "class model has {} weights for {} agents", c.weights.len(), matrix.num_agents());
    }
    let k = model.alphabet.len();
    let mut out = Vec::with_capacity(queries.len());
    for &q in queries {
        if q >= matrix.num_queries() {
            bail!(Shape, "query {q} out of range");
        }
        let mut scores = vec![0.0; k];
        for class in &model.classes {
            let w = &class.weights;
            scores[class.label.index()] = matrix
                .column(q)
                .iter()
                .fold(w.bias, |acc, o| acc + w.weights[o.agent] * if o.label == class.label { 1.0 } else { -1.0 });
        }
        out.push((q, scores));
    }
    Ok(FusionResult::from_scores(out))
}

/// Two-coin EM once per label ("label vs rest"); each label scores
/// `posterior - 0.5` and the argmax wins.
pub fn em_one_vs_all(matrix: &ObservationMatrix, config: &EmConfig) -> Result<(Vec<TwoCoinModel>, FusionResult)> {
    let k = matrix.alphabet().len();
    let models = matrix
        .alphabet()
        .ids()
        .map(|c| fit_two_coin(&encode_binary_id(matrix, c), config))
        .collect::<Result<Vec<_>>>()?;
    let result = FusionResult::from_scores((0..matrix.num_queries()).map(|q| {
        let mut v = vec![0.0; k];
        for (c, model) in models.iter().enumerate() {
            v[c] = model.posteriors[q] - 0.5;
        }
        (q, v)
    }));
    Ok((models, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MethodTag;

    fn four() -> LabelAlphabet {
        LabelAlphabet::new(["A", "B", "C", "D"]).unwrap()
    }

    fn hand_model(biases: [f64; 4], weight: f64) -> OneVsAllModel {
        OneVsAllModel {
            alphabet: four(),
            classes: (0..4)
                .map(|c| ClassModel {
                    label: LabelId::new(c),
                    weights: TrustWeights::new(vec![weight], biases[c], MethodTag::ProfessionalSearch),
                    lambda: 0.0,
                    cv: None,
                })
                .collect(),
        }
    }

    #[test]
    fn predicts_the_positive_class() {
        // the single agent says "C": class C scores bias + w, others bias - w
        let m = ObservationMatrix::from_named(1, 1, four(), [(0, 0, "C")]).unwrap();
        let r = one_vs_all_predict(&hand_model([-0.1; 4], 1.0), &m, &[0]).unwrap();
        assert_eq!(m.alphabet().name(r.prediction(0).unwrap()), "C");
        assert_eq!(r.scores(0).unwrap(), &[-1.1, -1.1, 0.9, -1.1]);
    }

    #[test]
    fn unanswered_query_falls_to_biases() {
        let m = ObservationMatrix::new(1, 1, four(), []).unwrap();
        let r = one_vs_all_predict(&hand_model([0.2, 0.5, 0.5, -1.0], 1.0), &m, &[0]).unwrap();
        assert_eq!(r.scores(0).unwrap(), &[0.2, 0.5, 0.5, -1.0]);
        assert_eq!(m.alphabet().name(r.prediction(0).unwrap()), "B");
    }

    #[test]
    fn binary_alphabet_rejected() {
        let a = LabelAlphabet::new(["x", "y"]).unwrap();
        let m = ObservationMatrix::from_named(1, 2, a.clone(), [(0, 0, "x"), (0, 1, "y")]).unwrap();
        let key = AnswerKey::new(2, &a, [(0, LabelId::new(0)), (1, LabelId::new(1))]).unwrap();
        let r = one_vs_all_train(&m, &key, &[0, 1], Penalty::L1, &LambdaChoice::Fixed(0.0), &CvConfig::default());
        assert!(matches!(r, Err(crate::Error::Argument(_))));
    }

    #[test]
    fn mismatched_alphabet_rejected() {
        let a = LabelAlphabet::new(["x", "y", "z"]).unwrap();
        let m = ObservationMatrix::new(1, 1, a, []).unwrap();
        assert!(one_vs_all_predict(&hand_model([0.0; 4], 1.0), &m, &[0]).is_err());
    }

    #[test]
    fn binary_alphabet_through_all_classes_mirrors() {
        let a = LabelAlphabet::new(["neg", "pos"]).unwrap();
        let entries = [(0, 0, "pos"), (1, 0, "pos"), (0, 1, "neg"), (1, 1, "pos"), (0, 2, "neg"), (1, 3, "neg"), (0, 3, "pos")];
        let m = ObservationMatrix::from_named(2, 4, a.clone(), entries).unwrap();
        let truth = [1, 0, 0, 1].map(LabelId::new);
        let key = AnswerKey::new(4, &a, truth.iter().copied().enumerate()).unwrap();
        let grid = LambdaChoice::CrossValidate(crate::modelsel::LambdaGrid::default_for(Penalty::L2));
        let model = train_all_classes(&m, &key, &[0, 1, 2, 3], Penalty::L2, &grid, &CvConfig::default()).unwrap();
        let r = one_vs_all_predict(&model, &m, &[0, 1, 2, 3]).unwrap();
        for q in 0..4 {
            let s = r.scores(q).unwrap();
            if s[0] != 0.0 && s[1] != 0.0 {
                assert_eq!(s[0] > 0.0, s[1] < 0.0, "query {q}: {s:?}");
            }
        }
        assert_eq!(model.classes[0].lambda, model.classes[1].lambda);
    }
}
