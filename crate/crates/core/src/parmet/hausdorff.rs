use std::collections::BTreeMap;

use crate::error::{QcatError, Result};
use crate::report::PropertyReport;

use super::space::validate_pms;
use super::{ExtValue, PartialMetricSpace};

/// Largest number of equally typed points whose subsets are enumerated.
pub const MAX_TYPE_CLASS: usize = 16;

/// `⋁_{t∈T} ⋀_{s∈S} p(t,s)`.
pub fn hausdorff_distance(x: &PartialMetricSpace, t: &[usize], s: &[usize]) -> ExtValue {
    t.iter()
        .map(|&a| s.iter().map(|&b| x.p(a, b).clone()).min().unwrap_or(ExtValue::Inf))
        .max()
        .unwrap_or_else(ExtValue::zero)
}

pub fn subset_name(x: &PartialMetricSpace, s: &[usize]) -> String {
    let names: Vec<&str> = s.iter().map(|&a| x.name(a)).collect();
    format!("{{{}}}", names.join(","))
}

/// Nonempty subsets whose members share one self-distance, grouped by type and then by mask.
pub fn typed_subsets(x: &PartialMetricSpace) -> Result<Vec<Vec<usize>>> {
    let mut classes: BTreeMap<ExtValue, Vec<usize>> = BTreeMap::new();
    for a in x.points() {
        classes.entry(x.typ(a).clone()).or_default().push(a);
    }
    let mut out = Vec::new();
    for members in classes.values() {
        if members.len() > MAX_TYPE_CLASS {
            return Err(QcatError::BoundExceeded {
                needed: members.len() as u128,
                bound: MAX_TYPE_CLASS as u128,
            });
        }
        for m in 1u32..(1 << members.len()) {
            out.push(
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &a)| a)
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// The sup-inf distance on the given subsets, which must be nonempty.
pub fn subset_space(x: &PartialMetricSpace, subsets: &[Vec<usize>]) -> Result<PartialMetricSpace> {
    if subsets.iter().any(|s| s.is_empty()) {
        return Err(QcatError::InvalidArgument("the empty subset is not a point".into()));
    }
    if let Some(&a) = subsets.iter().flatten().find(|&&a| a >= x.len()) {
        return Err(QcatError::InvalidArgument(format!("point index {a} is out of range")));
    }
    let names = subsets.iter().map(|s| subset_name(x, s)).collect();
    PartialMetricSpace::new(names, |i, j| hausdorff_distance(x, &subsets[i], &subsets[j]))
}

/// The space of typed subsets.
pub fn hausdorff(x: &PartialMetricSpace) -> Result<PartialMetricSpace> {
    subset_space(x, &typed_subsets(x)?)
}

/// Axiom checks of the sup-inf distance on arbitrary subsets.
pub fn hausdorff_violations(x: &PartialMetricSpace, subsets: &[Vec<usize>]) -> Result<PropertyReport> {
    Ok(validate_pms(&subset_space(x, subsets)?))
}
