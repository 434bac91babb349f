//! Annotation aggregation: (weighted) plurality, soft label distributions
//! and annotator-reliability estimation via EM under a symmetric
//! one-parameter noise model, with MLE labels from the estimated
//! reliabilities.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::portioning::Distribution;

/// Reports: one label per (item, annotator) pair from a finite alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationSet {
    pub items: Vec<String>,
    pub labels: Vec<String>,
    /// (item-id, annotator-id, label) triples.
    pub reports: Vec<(String, String, String)>,
}

impl AnnotationSet {
    /// Builds the set from raw triples, deriving items and the alphabet.
    pub fn from_reports(reports: Vec<(String, String, String)>) -> Result<AnnotationSet> {
        let mut items: BTreeSet<String> = BTreeSet::new();
        let mut labels: BTreeSet<String> = BTreeSet::new();
        let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
        for (item, annotator, label) in &reports {
            if !seen.insert((item.clone(), annotator.clone())) {
                return Err(Error::validation(format!(
                    "duplicate report for item {item} by annotator {annotator}"
                )));
            }
            items.insert(item.clone());
            labels.insert(label.clone());
        }
        if reports.is_empty() {
            return Err(Error::validation("no annotation reports"));
        }
        Ok(AnnotationSet {
            items: items.into_iter().collect(),
            labels: labels.into_iter().collect(),
            reports,
        })
    }

    /// Parses the CSV interchange format: header `item,annotator,label`.
    pub fn from_csv(reader: impl Read) -> Result<AnnotationSet> {
        let mut rdr = csv::Reader::from_reader(reader);
        {
            let headers = rdr.headers()?;
            let expected = ["item", "annotator", "label"];
            let got: Vec<&str> = headers.iter().collect();
            if got != expected {
                return Err(Error::validation(format!(
                    "expected CSV header item,annotator,label, got {}",
                    got.join(",")
                )));
            }
        }
        let mut reports = Vec::new();
        for record in rdr.records() {
            let record = record?;
            if record.len() != 3 {
                return Err(Error::validation("CSV row does not have 3 columns"));
            }
            reports.push((
                record[0].to_string(),
                record[1].to_string(),
                record[2].to_string(),
            ));
        }
        AnnotationSet::from_reports(reports)
    }

    pub fn annotators(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.reports.iter().map(|(_, a, _)| a.as_str()).collect();
        set.into_iter().map(String::from).collect()
    }

    fn reports_by_item(&self) -> BTreeMap<&str, Vec<(&str, &str)>> {
        let mut by_item: BTreeMap<&str, Vec<(&str, &str)>> = BTreeMap::new();
        for (item, annotator, label) in &self.reports {
            by_item
                .entry(item.as_str())
                .or_default()
                .push((annotator.as_str(), label.as_str()));
        }
        by_item
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationMode {
    Plurality,
    Weighted,
    Soft,
}

/// Per-item aggregation result: a hard label or a soft distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ItemLabel {
    Hard(String),
    Soft(Distribution),
}

/// Aggregates reports per item. Plurality and weighted modes return the
/// max-support label (lexicographic ties); soft mode returns the empirical
/// (weighted) frequency distribution without smoothing.
pub fn aggregate_labels(
    annotations: &AnnotationSet,
    mode: AggregationMode,
    weights: Option<&BTreeMap<String, f64>>,
) -> Result<BTreeMap<String, ItemLabel>> {
    let mut out = BTreeMap::new();
    for (item, reports) in annotations.reports_by_item() {
        let mut support: BTreeMap<&str, f64> = BTreeMap::new();
        for (annotator, label) in &reports {
            let w = match mode {
                AggregationMode::Plurality => 1.0,
                AggregationMode::Weighted | AggregationMode::Soft => match weights {
                    Some(map) => *map.get(*annotator).ok_or_else(|| {
                        Error::validation(format!("no weight for annotator {annotator}"))
                    })?,
                    None if mode == AggregationMode::Weighted => {
                        return Err(Error::validation("weighted mode requires weights"))
                    }
                    None => 1.0,
                },
            };
            *support.entry(label).or_insert(0.0) += w;
        }
        let result = match mode {
            AggregationMode::Plurality | AggregationMode::Weighted => {
                let best = support.values().cloned().fold(f64::NEG_INFINITY, f64::max);
                let label = support
                    .iter()
                    .filter(|(_, v)| **v == best)
                    .map(|(k, _)| *k)
                    .min()
                    .unwrap();
                ItemLabel::Hard(label.to_string())
            }
            AggregationMode::Soft => {
                let total: f64 = support.values().sum();
                if total <= 0.0 {
                    return Err(Error::validation(format!(
                        "item {item}: total weight is zero"
                    )));
                }
                let mass: BTreeMap<String, f64> = support
                    .iter()
                    .map(|(k, v)| (k.to_string(), v / total))
                    .collect();
                ItemLabel::Soft(Distribution::new(
                    mass.keys().cloned().collect(),
                    mass,
                )?)
            }
        };
        out.insert(item.to_string(), result);
    }
    Ok(out)
}

/// Per-annotator accuracy under the symmetric noise model: the annotator
/// reports the true label with probability p, otherwise uniformly among
/// the other L−1 labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityEstimate {
    pub accuracies: BTreeMap<String, f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Posterior label distribution per item from the final E-step.
    pub posteriors: BTreeMap<String, Distribution>,
}

const P_INIT: f64 = 0.7;
const CLAMP_EPS: f64 = 1e-6;

/// Expectation–maximization for the symmetric one-parameter noise model
/// with a uniform label prior. Initialization p = 0.7 for every annotator;
/// accuracies are clamped to [1/L + 1e-6, 1 − 1e-6].
pub fn estimate_reliabilities(
    annotations: &AnnotationSet,
    max_iterations: usize,
    tolerance: f64,
) -> Result<ReliabilityEstimate> {
    let labels = &annotations.labels;
    let l = labels.len();
    if l < 2 {
        return Err(Error::validation("label alphabet must have at least 2 labels"));
    }
    let annotators = annotations.annotators();
    if annotators.len() < 2 {
        return Err(Error::validation("need at least 2 annotators"));
    }
    if max_iterations == 0 {
        return Err(Error::validation("max-iterations must be at least 1"));
    }
    let lo = 1.0 / l as f64 + CLAMP_EPS;
    let hi = 1.0 - CLAMP_EPS;

    let by_item = annotations.reports_by_item();
    let mut p: BTreeMap<&str, f64> = annotators.iter().map(|a| (a.as_str(), P_INIT)).collect();
    let mut posteriors: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iterations {
        iterations += 1;
        // E-step: per-item posterior over labels under current accuracies
        posteriors.clear();
        for (item, reports) in &by_item {
            let mut log_post = vec![0.0f64; l];
            for (idx, candidate) in labels.iter().enumerate() {
                for (annotator, label) in reports {
                    let pa = p[annotator];
                    let prob = if label == &candidate.as_str() {
                        pa
                    } else {
                        (1.0 - pa) / (l - 1) as f64
                    };
                    log_post[idx] += prob.ln();
                }
            }
            let max = log_post.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mut probs: Vec<f64> = log_post.iter().map(|lp| (lp - max).exp()).collect();
            let sum: f64 = probs.iter().sum();
            for q in &mut probs {
                *q /= sum;
            }
            posteriors.insert(item.to_string(), probs);
        }
        // M-step: posterior-weighted agreement rate per annotator
        let mut max_delta = 0.0f64;
        for annotator in &annotators {
            let mut agree = 0.0;
            let mut total = 0.0;
            for (item, reports) in &by_item {
                let probs = &posteriors[*item];
                for (a, label) in reports {
                    if a != &annotator.as_str() {
                        continue;
                    }
                    let idx = labels.iter().position(|cand| cand == label).unwrap();
                    agree += probs[idx];
                    total += 1.0;
                }
            }
            if total == 0.0 {
                continue;
            }
            let updated = (agree / total).clamp(lo, hi);
            let old = p[annotator.as_str()];
            max_delta = max_delta.max((updated - old).abs());
            p.insert(annotator.as_str(), updated);
        }
        if max_delta < tolerance {
            converged = true;
            break;
        }
    }

    let posterior_dists: BTreeMap<String, Distribution> = posteriors
        .iter()
        .map(|(item, probs)| {
            let mass: BTreeMap<String, f64> = labels
                .iter()
                .cloned()
                .zip(probs.iter().cloned())
                .collect();
            Ok((
                item.clone(),
                Distribution::new(labels.clone(), mass)?,
            ))
        })
        .collect::<Result<_>>()?;

    Ok(ReliabilityEstimate {
        accuracies: p.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        iterations,
        converged,
        posteriors: posterior_dists,
    })
}

/// Per-item maximum-likelihood labels under the symmetric noise model:
/// each report votes with weight log(p(L−1)/(1−p)). With equal accuracies
/// this reduces to plurality.
pub fn mle_labels(
    annotations: &AnnotationSet,
    reliabilities: &ReliabilityEstimate,
) -> Result<BTreeMap<String, String>> {
    let l = annotations.labels.len();
    let mut out = BTreeMap::new();
    for (item, reports) in annotations.reports_by_item() {
        let mut scores: BTreeMap<&str, f64> = BTreeMap::new();
        for (annotator, label) in &reports {
            let pa = reliabilities.accuracies.get(*annotator).ok_or_else(|| {
                Error::validation(format!("no reliability for annotator {annotator}"))
            })?;
            let vote = (pa * (l - 1) as f64 / (1.0 - pa)).ln();
            *scores.entry(label).or_insert(0.0) += vote;
        }
        let best = scores.values().cloned().fold(f64::NEG_INFINITY, f64::max);
        let label = scores
            .iter()
            .filter(|(_, v)| **v == best)
            .map(|(k, _)| *k)
            .min()
            .unwrap();
        out.insert(item.to_string(), label.to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reports(triples: &[(&str, &str, &str)]) -> AnnotationSet {
        AnnotationSet::from_reports(
            triples
                .iter()
                .map(|(i, a, l)| (i.to_string(), a.to_string(), l.to_string()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn plurality_strict_majority() {
        let ann = reports(&[("i1", "a1", "x"), ("i1", "a2", "x"), ("i1", "a3", "y")]);
        let out = aggregate_labels(&ann, AggregationMode::Plurality, None).unwrap();
        assert_eq!(out["i1"], ItemLabel::Hard("x".to_string()));
    }

    #[test]
    fn weighted_mode_hand_sum() {
        let ann = reports(&[("i1", "a1", "x"), ("i1", "a2", "y"), ("i1", "a3", "y")]);
        let weights: BTreeMap<String, f64> = [
            ("a1".to_string(), 0.9),
            ("a2".to_string(), 0.6),
            ("a3".to_string(), 0.6),
        ]
        .into_iter()
        .collect();
        let out = aggregate_labels(&ann, AggregationMode::Weighted, Some(&weights)).unwrap();
        assert_eq!(out["i1"], ItemLabel::Hard("y".to_string()));
    }

    #[test]
    fn weighted_mode_missing_weight_names_annotator() {
        let ann = reports(&[("i1", "a1", "x"), ("i1", "a2", "y")]);
        let weights: BTreeMap<String, f64> = [("a1".to_string(), 1.0)].into_iter().collect();
        let err = aggregate_labels(&ann, AggregationMode::Weighted, Some(&weights)).unwrap_err();
        assert!(err.to_string().contains("a2"));
    }

    #[test]
    fn soft_mode_is_empirical_frequency() {
        let ann = reports(&[
            ("i1", "a1", "x"),
            ("i1", "a2", "x"),
            ("i1", "a3", "y"),
            ("i1", "a4", "y"),
        ]);
        let out = aggregate_labels(&ann, AggregationMode::Soft, None).unwrap();
        match &out["i1"] {
            ItemLabel::Soft(d) => {
                assert!((d.mass["x"] - 0.5).abs() < 1e-12);
                assert!((d.mass["y"] - 0.5).abs() < 1e-12);
            }
            other => panic!("expected soft label, got {other:?}"),
        }
    }

    #[test]
    fn plurality_is_annotator_anonymous() {
        let ann1 = reports(&[("i1", "a1", "x"), ("i1", "a2", "y"), ("i1", "a3", "x")]);
        let ann2 = reports(&[("i1", "a3", "x"), ("i1", "a1", "y"), ("i1", "a2", "x")]);
        assert_eq!(
            aggregate_labels(&ann1, AggregationMode::Plurality, None).unwrap(),
            aggregate_labels(&ann2, AggregationMode::Plurality, None).unwrap()
        );
    }

    #[test]
    fn duplicate_item_annotator_pair_rejected() {
        let result = AnnotationSet::from_reports(vec![
            ("i1".to_string(), "a1".to_string(), "x".to_string()),
            ("i1".to_string(), "a1".to_string(), "y".to_string()),
        ]);
        assert!(result.is_err());
    }

    #[test]
    fn csv_round() {
        let csv = "item,annotator,label\ni1,a1,x\ni1,a2,y\n";
        let ann = AnnotationSet::from_csv(csv.as_bytes()).unwrap();
        assert_eq!(ann.items, vec!["i1".to_string()]);
        assert_eq!(ann.reports.len(), 2);

        let bad = "foo,bar,baz\ni1,a1,x\n";
        assert!(AnnotationSet::from_csv(bad.as_bytes()).is_err());
    }

    #[test]
    fn unanimous_annotators_hit_upper_clamp() {
        let mut triples = Vec::new();
        for i in 0..12 {
            for a in ["a1", "a2", "a3"] {
                triples.push((format!("i{i:02}"), a.to_string(), format!("l{}", i % 2)));
            }
        }
        let ann = AnnotationSet::from_reports(triples).unwrap();
        let est = estimate_reliabilities(&ann, 50, 1e-9).unwrap();
        for p in est.accuracies.values() {
            assert!((p - (1.0 - CLAMP_EPS)).abs() < 1e-9);
        }
        // posteriors concentrated on the unanimous label
        for (item, d) in &est.posteriors {
            let idx: usize = item[1..].parse::<usize>().unwrap() % 2;
            assert!(d.mass[&format!("l{idx}")] > 0.99);
        }
    }

    #[test]
    fn persistent_dissenter_gets_low_accuracy() {
        let mut triples = Vec::new();
        for i in 0..20 {
            let truth = format!("l{}", i % 2);
            let other = format!("l{}", (i + 1) % 2);
            triples.push((format!("i{i:02}"), "good1".to_string(), truth.clone()));
            triples.push((format!("i{i:02}"), "good2".to_string(), truth));
            triples.push((format!("i{i:02}"), "dissenter".to_string(), other));
        }
        let ann = AnnotationSet::from_reports(triples).unwrap();
        let est = estimate_reliabilities(&ann, 50, 1e-9).unwrap();
        assert!(est.accuracies["dissenter"] < 0.55);
        assert!(est.accuracies["good1"] > 0.9);
        for (item, d) in &est.posteriors {
            let idx: usize = item[1..].parse::<usize>().unwrap() % 2;
            assert!(d.mass[&format!("l{idx}")] > 0.9);
        }
    }

    #[test]
    fn em_is_deterministic() {
        let ann = reports(&[
            ("i1", "a1", "x"),
            ("i1", "a2", "y"),
            ("i2", "a1", "x"),
            ("i2", "a2", "x"),
            ("i3", "a1", "y"),
            ("i3", "a2", "y"),
        ]);
        let e1 = estimate_reliabilities(&ann, 30, 1e-8).unwrap();
        let e2 = estimate_reliabilities(&ann, 30, 1e-8).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn degenerate_alphabet_rejected() {
        let ann = reports(&[("i1", "a1", "x"), ("i2", "a2", "x")]);
        assert!(estimate_reliabilities(&ann, 10, 1e-6).is_err());
    }

    #[test]
    fn mle_with_equal_accuracies_is_plurality() {
        let ann = reports(&[
            ("i1", "a1", "x"),
            ("i1", "a2", "y"),
            ("i1", "a3", "y"),
            ("i2", "a1", "x"),
            ("i2", "a2", "x"),
            ("i2", "a3", "y"),
        ]);
        let rel = ReliabilityEstimate {
            accuracies: ["a1", "a2", "a3"]
                .iter()
                .map(|a| (a.to_string(), 0.8))
                .collect(),
            iterations: 0,
            converged: true,
            posteriors: BTreeMap::new(),
        };
        let mle = mle_labels(&ann, &rel).unwrap();
        let plurality = aggregate_labels(&ann, AggregationMode::Plurality, None).unwrap();
        for (item, label) in &mle {
            assert_eq!(plurality[item], ItemLabel::Hard(label.clone()));
        }
    }

    #[test]
    fn confident_pair_beats_weak_dissenter() {
        let ann = reports(&[("i1", "p1", "x"), ("i1", "p2", "x"), ("i1", "weak", "y")]);
        let rel = ReliabilityEstimate {
            accuracies: [("p1", 0.9), ("p2", 0.9), ("weak", 0.51)]
                .iter()
                .map(|(a, p)| (a.to_string(), *p))
                .collect(),
            iterations: 0,
            converged: true,
            posteriors: BTreeMap::new(),
        };
        let mle = mle_labels(&ann, &rel).unwrap();
        assert_eq!(mle["i1"], "x");
    }

    #[test]
    fn single_annotator_report_is_returned() {
        let ann = reports(&[("i1", "solo", "x"), ("i2", "solo", "y")]);
        let rel = ReliabilityEstimate {
            accuracies: [("solo".to_string(), 0.8)].into_iter().collect(),
            iterations: 0,
            converged: true,
            posteriors: BTreeMap::new(),
        };
        let mle = mle_labels(&ann, &rel).unwrap();
        assert_eq!(mle["i1"], "x");
        assert_eq!(mle["i2"], "y");
    }

    #[test]
    fn mle_missing_reliability_errors() {
        let ann = reports(&[("i1", "a1", "x")]);
        let rel = ReliabilityEstimate {
            accuracies: BTreeMap::new(),
            iterations: 0,
            converged: true,
            posteriors: BTreeMap::new(),
        };
        assert!(mle_labels(&ann, &rel).is_err());
    }
}
