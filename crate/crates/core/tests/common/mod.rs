//! Brute-force oracles shared by the integration tests. Each one is written
//! from the definition, independently of the library code it checks.
#![allow(dead_code)]

use netfp::dataset::LabeledDataset;
use netfp::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple graph with `n ≤ max_n` nodes and a random density, so the
/// fuzz set covers sparse, dense, empty and complete cases.
pub fn fuzz_graph(r: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = r.random_range(0..=max_n);
    let p: f64 = match r.random_range(0..4) {
        0 => r.random_range(0.0..0.15),
        1 => r.random_range(0.1..0.5),
        2 => r.random_range(0.4..0.9),
        _ => r.random_range(0.85..=1.0),
    };
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        m[a][b] = true;
        m[b][a] = true;
    }
    m
}

/// Class of the subgraph induced by four nodes, in the order
/// clique, diamond, paw, 4-cycle, star, path; `None` when disconnected.
pub fn classify_quadruple(adj: &[Vec<bool>], q: [usize; 4]) -> Option<usize> {
    let mut deg = [0usize; 4];
    let mut edges = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if adj[q[i]][q[j]] {
                deg[i] += 1;
                deg[j] += 1;
                edges += 1;
            }
        }
    }
    // Connectivity by flood fill over the four positions.
    let mut seen = [false; 4];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..4 {
            if !seen[j] && adj[q[i]][q[j]] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    deg.sort_unstable();
    Some(match (edges, deg) {
        (6, _) => 0,
        (5, _) => 1,
        (4, [1, 2, 2, 3]) => 2,
        (4, [2, 2, 2, 2]) => 3,
        (3, [1, 1, 1, 3]) => 4,
        (3, [1, 1, 2, 2]) => 5,
        other => panic!("impossible connected quadruple {other:?}"),
    })
}

/// Induced census by visiting every 4-subset.
pub fn brute_census(g: &Graph) -> [u64; 6] {
    let adj = adjacency(g);
    let n = g.node_count();
    let mut out = [0u64; 6];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if let Some(k) = classify_quadruple(&adj, [a, b, c, d]) {
                        out[k] += 1;
                    }
                }
            }
        }
    }
    out
}

/// Pearson correlation of the degrees at the two ends of every edge, each
/// edge contributing both orientations. `None` when either side has zero
/// variance.
pub fn pearson_over_stubs(g: &Graph) -> Option<f64> {
    let deg = g.degrees();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &(a, b) in g.edges() {
        xs.extend([deg[a] as f64, deg[b] as f64]);
        ys.extend([deg[b] as f64, deg[a] as f64]);
    }
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx < 1e-12 || syy < 1e-12 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Closed triples over connected triples, counted by visiting every wedge.
pub fn brute_clustering(g: &Graph) -> f64 {
    let adj = adjacency(g);
    let mut wedges = 0u64;
    let mut closed = 0u64;
    for v in 0..g.node_count() {
        let nb = g.neighbors(v);
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                wedges += 1;
                if adj[nb[i]][nb[j]] {
                    closed += 1;
                }
            }
        }
    }
    if wedges == 0 {
        0.0
    } else {
        closed as f64 / wedges as f64
    }
}

/// Every labeled simple graph on `n` nodes with the given degree sequence
/// (by node), as sorted edge lists.
pub fn realizations(n: usize, degrees: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let m: usize = degrees.iter().sum::<usize>() / 2;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut deg = vec![0usize; n];
    fn walk(
        i: usize,
        pairs: &[(usize, usize)],
        m: usize,
        target: &[usize],
        deg: &mut Vec<usize>,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if chosen.len() == m {
            if deg == target {
                out.push(chosen.clone());
            }
            return;
        }
        if i == pairs.len() || pairs.len() - i < m - chosen.len() {
            return;
        }
        let (a, b) = pairs[i];
        if deg[a] < target[a] && deg[b] < target[b] {
            deg[a] += 1;
            deg[b] += 1;
            chosen.push((a, b));
            walk(i + 1, pairs, m, target, deg, chosen, out);
            chosen.pop();
            deg[a] -= 1;
            deg[b] -= 1;
        }
        walk(i + 1, pairs, m, target, deg, chosen, out);
    }
    walk(0, &pairs, m, degrees, &mut deg, &mut chosen, &mut out);
    out
}

/// Canonical form under relabeling: the lexicographically smallest sorted
/// edge list over all node permutations. Exponential; meant for n ≤ 8.
pub fn canonical_form(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut e: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap_or_default()
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn random_permutation(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    p
}

/// Weighted modularity computed from the definition
/// `Q = (1/2W) Σ_ij [A_ij − k_i k_j / 2W] δ(c_i, c_j)`.
pub fn modularity_from_definition(
    n: usize,
    edges: &[(usize, usize, f64)],
    member: &[usize],
) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for &(i, j, w) in edges {
        a[i][j] += w;
        a[j][i] += w;
    }
    let k: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let two_w: f64 = k.iter().sum();
    if two_w == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if member[i] == member[j] {
                q += a[i][j] - k[i] * k[j] / two_w;
            }
        }
    }
    q / two_w
}

/// Best modularity over every set partition of `n` nodes (restricted growth
/// strings), with one maximizing membership.
pub fn exhaustive_modularity(n: usize, edges: &[(usize, usize, f64)]) -> (f64, Vec<usize>) {
    let mut best = (f64::NEG_INFINITY, Vec::new());
    let mut rgs = vec![0usize; n];
    fn walk(
        i: usize,
        max: usize,
        rgs: &mut Vec<usize>,
        n: usize,
        edges: &[(usize, usize, f64)],
        best: &mut (f64, Vec<usize>),
    ) {
        if i == n {
            let q = modularity_from_definition(n, edges, rgs);
            if q > best.0 + 1e-12 {
                *best = (q, rgs.clone());
            }
            return;
        }
        for c in 0..=max + 1 {
            rgs[i] = c;
            walk(i + 1, max.max(c), rgs, n, edges, best);
        }
    }
    if n == 0 {
        return (0.0, Vec::new());
    }
    rgs[0] = 0;
    walk(1, 0, &mut rgs, n, edges, &mut best);
    best
}

/// Two `k`-cliques joined by one unit-weight edge between node `k−1` and `k`.
pub fn barbell(k: usize) -> Vec<(usize, usize, f64)> {
    let mut e = Vec::new();
    for base in [0, k] {
        for a in 0..k {
            for b in a + 1..k {
                e.push((base + a, base + b, 1.0));
            }
        }
    }
    e.push((k - 1, k, 1.0));
    e.sort_by_key(|x| (x.0, x.1));
    e
}

/// Gaussian sample by Box–Muller.
pub fn normal(r: &mut ChaCha8Rng) -> f64 {
    let u: f64 = 1.0 - r.random::<f64>();
    let v: f64 = r.random();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

/// Isotropic Gaussian blobs: `per_class` points per center, unit variance.
pub fn blobs(r: &mut ChaCha8Rng, centers: &[(&str, Vec<f64>)], per_class: usize) -> LabeledDataset {
    let p = centers[0].1.len();
    let mut rows = Vec::new();
    for _ in 0..per_class {
        for (name, c) in centers {
            rows.push((*name, c.iter().map(|m| m + normal(r)).collect::<Vec<f64>>()));
        }
    }
    LabeledDataset::from_rows((0..p).map(|f| format!("f{f}")).collect(), rows).unwrap()
}

/// Nearest-centroid classifier fitted on `train`; returns accuracy on `test`.
pub fn centroid_accuracy(train: &LabeledDataset, test: &LabeledDataset) -> f64 {
    let c = train.n_classes();
    let p = train.n_features();
    let mut sums = vec![vec![0.0; p]; c];
    let mut counts = vec![0.0; c];
    for s in &train.samples {
        counts[s.label] += 1.0;
        for f in 0..p {
            sums[s.label][f] += s.features[f];
        }
    }
    let centroids: Vec<Vec<f64>> = sums
        .iter()
        .zip(&counts)
        .map(|(s, n)| s.iter().map(|v| v / n).collect())
        .collect();
    let correct = test
        .samples
        .iter()
        .filter(|s| {
            let dist = |k: usize| -> f64 {
                centroids[k]
                    .iter()
                    .zip(&s.features)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum()
            };
            let pred = (0..c).min_by(|&a, &b| dist(a).total_cmp(&dist(b))).unwrap();
            pred == s.label
        })
        .count();
    correct as f64 / test.len() as f64
}

/// Mann–Whitney AUC by comparing every positive/negative pair.
pub fn pairwise_auc(scores: &[f64], truths: &[bool]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, &ti) in truths.iter().enumerate() {
        for (j, &tj) in truths.iter().enumerate() {
            if ti && !tj {
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
    }
    wins / pairs
}
