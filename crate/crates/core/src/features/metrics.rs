use crate::graph::Graph;

/// Size of the sorted intersection of two neighbor lists.
#[inline]
pub(crate) fn common_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Number of triangles in `g`.
pub fn triangle_count(g: &Graph) -> u64 {
    let sum: u64 = g
        .edges()
        .iter()
        .map(|&(a, b)| common_count(g.neighbors(a), g.neighbors(b)) as u64)
        .sum();
    sum / 3
}

/// Global clustering coefficient (transitivity): closed length-two paths over
/// all length-two paths, `3T / Σ C(k_i, 2)`. Zero when there are no wedges.
pub fn clustering_coefficient(g: &Graph) -> f64 {
    let wedges: u64 = g
        .degrees()
        .iter()
        .map(|&k| (k as u64) * (k as u64).saturating_sub(1) / 2)
        .sum();
    if wedges == 0 {
        return 0.0;
    }
    3.0 * triangle_count(g) as f64 / wedges as f64
}

/// Degree assortativity coefficient.
///
/// Evaluated as the ratio of the degree covariance over edge ends to its value
/// under perfect assortative mixing:
///
/// ```text
/// r = (Σ_ij A_ij k_i k_j − S2²/2m) / (S3 − S2²/2m),   S_p = Σ_i k_i^p
/// ```
///
/// Sums are accumulated in integers, so the zero-denominator case (every edge
/// end has the same degree) is detected exactly and reported as `None`, as is
/// the edgeless graph.
pub fn degree_assortativity(g: &Graph) -> Option<f64> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return None;
    }
    let deg = g.degrees();
    let (mut s2, mut s3) = (0i128, 0i128);
    for &k in &deg {
        let k = k as i128;
        s2 += k * k;
        s3 += k * k * k;
    }
    let ends: i128 = g
        .edges()
        .iter()
        .map(|&(a, b)| 2 * deg[a] as i128 * deg[b] as i128)
        .sum();
    // Both terms scaled by 2m.
    let num = 2 * m * ends - s2 * s2;
    let den = 2 * m * s3 - s2 * s2;
    if den == 0 {
        return None;
    }
    Some(num as f64 / den as f64)
}
