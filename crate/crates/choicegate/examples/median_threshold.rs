//! Picks a deployment threshold as the weighted lower median of stakeholder
//! reports. The median is strategyproof for single-peaked preferences: no
//! stakeholder can move the result toward their peak by misreporting.
//!
//! Run with: cargo run --example median_threshold

use choicegate::voting::median_select;

fn main() -> choicegate::Result<()> {
    let decision = median_select("minimum-accuracy", &[0.90, 0.97, 0.85], &[1.0, 1.0, 1.0])?;
    println!("unit weights: {} = {}", decision.metric_id, decision.value);

    // the regulator's report carries triple weight
    let weighted = median_select("minimum-accuracy", &[0.90, 0.97, 0.85], &[1.0, 3.0, 1.0])?;
    println!("regulator x3: {} = {}", weighted.metric_id, weighted.value);

    // a misreport by the low-peak stakeholder cannot pull the median down
    let misreport = median_select("minimum-accuracy", &[0.90, 0.97, 0.10], &[1.0, 1.0, 1.0])?;
    println!("after misreport 0.85 -> 0.10: value = {}", misreport.value);
    Ok(())
}
