//! Aggregates conflicting annotator labels from the bundled CSV fixture:
//! plurality and soft (disagreement-preserving) aggregation, then EM
//! reliability estimation and maximum-likelihood labels that discount the
//! noisy annotator automatically.
//!
//! Run with: cargo run --example label_aggregation

use std::fs::File;
use std::path::Path;

use choicegate::epistemic::{
    aggregate_labels, estimate_reliabilities, mle_labels, AggregationMode, AnnotationSet,
};

fn main() -> choicegate::Result<()> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let annotations = AnnotationSet::from_csv(File::open(fixtures.join("annotations.csv"))?)?;

    let hard = aggregate_labels(&annotations, AggregationMode::Plurality, None)?;
    println!("plurality: {hard:?}");

    let soft = aggregate_labels(&annotations, AggregationMode::Soft, None)?;
    println!("soft: {soft:?}");

    let estimate = estimate_reliabilities(&annotations, 100, 1e-8)?;
    println!(
        "EM converged after {} iterations; accuracies: {:?}",
        estimate.iterations, estimate.accuracies
    );
    println!("MLE labels: {:?}", mle_labels(&annotations, &estimate)?);
    Ok(())
}
