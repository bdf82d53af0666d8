//! Brute-force reference implementations. They only read generator tables
//! and distances and share no search code with the library.

use std::collections::{BTreeMap, BTreeSet};

use fgaction::{GroupAction, Scalar};

pub type Table = Vec<usize>;

pub fn tables(a: &GroupAction) -> Vec<Table> {
    a.maps().iter().map(|m| m.table().to_vec()).collect()
}

pub fn dist(a: &GroupAction) -> Vec<Vec<Scalar>> {
    dist_of(a.space())
}

pub fn dist_of(s: &fgaction::FiniteMetricSpace) -> Vec<Vec<Scalar>> {
    let n = s.len();
    (0..n).map(|i| (0..n).map(|j| s.d(i, j)).collect()).collect()
}

pub fn identity(n: usize) -> Table {
    (0..n).collect()
}

/// `p ∘ q`.
pub fn compose(p: &Table, q: &Table) -> Table {
    q.iter().map(|&x| p[x]).collect()
}

pub fn invert(p: &Table) -> Table {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// The map of a word `s1 … sn` (the last letter acts first).
pub fn word_table(gens: &[Table], word: &[usize], n: usize) -> Table {
    word.iter().fold(identity(n), |acc, &s| compose(&acc, &gens[s]))
}

/// Every word of length at most `k`, shortest first, lexicographic within a
/// length.
pub fn words(letters: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..letters {
                let mut v: Vec<usize> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Distinct maps of words of length at most `k`, with the first word (in
/// shortest-lex order) realizing each.
pub fn ball(a: &GroupAction, k: usize) -> BTreeMap<Table, Vec<usize>> {
    let gens = tables(a);
    let n = a.space().len();
    let mut out = BTreeMap::new();
    for w in words(gens.len(), k) {
        out.entry(word_table(&gens, &w, n)).or_insert(w);
    }
    out
}

/// Closure of the generators under composition.
pub fn group(a: &GroupAction) -> BTreeSet<Table> {
    let gens = tables(a);
    let n = a.space().len();
    let mut set = BTreeSet::from([identity(n)]);
    loop {
        let mut grown = set.clone();
        for g in &set {
            for s in &gens {
                grown.insert(compose(s, g));
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

/// Smallest `C` with every generator of each action a word of length ≤ `C`
/// in the other's generators (maps compared as tables).
pub fn cross_length(a: &GroupAction, b: &GroupAction, max: usize) -> Option<usize> {
    let mut c = 1;
    for (from, to) in [(a, b), (b, a)] {
        let gens = tables(to);
        let n = to.space().len();
        for target in tables(from) {
            let len = (0..=max).find(|&k| {
                words(gens.len(), k).iter().any(|w| w.len() == k && word_table(&gens, w, n) == target)
            })?;
            c = c.max(len);
        }
    }
    Some(c)
}

pub fn bounded(d: Scalar) -> Scalar {
    d.min(Scalar::from_integer(1))
}

pub fn set_distance(d: &[Vec<Scalar>], a: &[usize], b: &[usize]) -> Scalar {
    a.iter().flat_map(|&x| b.iter().map(move |&y| bounded(d[x][y]))).min().unwrap()
}

pub fn hausdorff(d: &[Vec<Scalar>], a: &[usize], b: &[usize]) -> Scalar {
    let one = |p: &[usize], q: &[usize]| p.iter().map(|&x| q.iter().map(|&y| bounded(d[x][y])).min().unwrap()).max().unwrap();
    one(a, b).max(one(b, a))
}

/// Pseudo-orbits indexed by element tables of a ball.
pub type Assignment = BTreeMap<Table, usize>;

/// `max d(Φ_s f(g), f(s g))` over `g, s g` both in the ball.
pub fn pseudo_orbit_defect(a: &GroupAction, elements: &[Table], f: &Assignment) -> Scalar {
    let gens = tables(a);
    let d = dist(a);
    let mut worst = Scalar::default();
    for g in elements {
        for s in &gens {
            let sg = compose(s, g);
            if let Some(&y) = f.get(&sg) {
                worst = worst.max(d[s[f[g]]][y]);
            }
        }
    }
    worst
}

/// Calls `visit` on every assignment of points to `elements`.
pub fn for_each_assignment(n: usize, elements: &[Table], mut visit: impl FnMut(&Assignment)) {
    let m = elements.len();
    let mut digits = vec![0usize; m];
    loop {
        let f: Assignment = elements.iter().cloned().zip(digits.iter().copied()).collect();
        visit(&f);
        let mut i = 0;
        loop {
            if i == m {
                return;
            }
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Points `x` with `max_g d(Φ_g x, f(g)) < ε`.
pub fn tracers(a: &GroupAction, f: &Assignment, epsilon: Scalar) -> Vec<usize> {
    let d = dist(a);
    (0..a.space().len())
        .filter(|&x| f.iter().all(|(g, &p)| d[g[x]][p] < epsilon))
        .collect()
}

pub fn tracing_radius(a: &GroupAction, f: &Assignment, x: usize) -> Scalar {
    let d = dist(a);
    f.iter().map(|(g, &p)| d[g[x]][p]).max().unwrap_or_default()
}

/// Largest `δ` in `values` such that every δ-pseudo-orbit on the elements is
/// ε-traced, by checking every δ in turn.
pub fn shadowing_sweep(a: &GroupAction, elements: &[Table], epsilon: Scalar, values: &[Scalar]) -> Scalar {
    let mut best = Scalar::default();
    for &delta in values {
        if delta <= Scalar::default() {
            continue;
        }
        let mut ok = true;
        for_each_assignment(a.space().len(), elements, |f| {
            if ok && pseudo_orbit_defect(a, elements, f) < delta && tracers(a, f, epsilon).is_empty() {
                ok = false;
            }
        });
        if ok {
            best = best.max(delta);
        } else {
            break;
        }
    }
    best
}

/// `max_g d(Φ_g x, Φ_g y)` over the whole group.
pub fn separation(a: &GroupAction, x: usize, y: usize) -> Scalar {
    let d = dist(a);
    group(a).iter().map(|g| d[g[x]][g[y]]).max().unwrap()
}

pub fn min_separation(a: &GroupAction) -> Option<Scalar> {
    let n = a.space().len();
    (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).map(|(x, y)| separation(a, x, y)).min()
}

/// A cover is a generator iff every pair of distinct points is, at some group
/// element, not inside a common member.
pub fn is_generator(a: &GroupAction, cover: &[Vec<usize>]) -> bool {
    let n = a.space().len();
    let g = group(a);
    (0..n).all(|x| {
        (0..n).filter(|&y| y != x).all(|y| {
            g.iter().any(|e| !cover.iter().any(|u| u.contains(&e[x]) && u.contains(&e[y])))
        })
    })
}

/// Points returned exactly to themselves by an allowed element. With `kernel`
/// the identity map is allowed too.
pub fn exact_return_points(a: &GroupAction, kernel: bool) -> Vec<usize> {
    let n = a.space().len();
    let g = group(a);
    let id = identity(n);
    (0..n).filter(|&x| kernel || g.iter().any(|e| *e != id && e[x] == x)).collect()
}

/// For all `p, q` some allowed element maps a point of `U_ε(p)` into `U_ε(q)`.
pub fn transitive(a: &GroupAction, epsilon: Scalar, kernel: bool) -> bool {
    let n = a.space().len();
    let d = dist(a);
    let id = identity(n);
    let g: Vec<Table> = group(a).into_iter().filter(|e| kernel || *e != id).collect();
    (0..n).all(|p| {
        (0..n).all(|q| {
            g.iter().any(|e| (0..n).any(|z| d[z][p] < epsilon && d[e[z]][q] < epsilon))
        })
    })
}

pub fn nonwandering(a: &GroupAction, epsilon: Scalar, kernel: bool) -> Vec<usize> {
    let n = a.space().len();
    let d = dist(a);
    let id = identity(n);
    let g: Vec<Table> = group(a).into_iter().filter(|e| kernel || *e != id).collect();
    (0..n)
        .filter(|&x| g.iter().any(|e| (0..n).any(|z| d[z][x] < epsilon && d[e[z]][x] < epsilon)))
        .collect()
}

pub fn fixed_points(t: &Table) -> Vec<usize> {
    (0..t.len()).filter(|&x| t[x] == x).collect()
}

/// `(x, y)` with `d(Φ_s x, y) < δ` for some generator.
pub fn step_edges(a: &GroupAction, delta: Scalar) -> BTreeSet<(usize, usize)> {
    let n = a.space().len();
    let d = dist(a);
    let gens = tables(a);
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            for s in &gens {
                if d[s[x]][y] < delta {
                    out.insert((x, y));
                }
            }
        }
    }
    out
}

/// Reflexive-transitive closure by Floyd-Warshall; `reach[x][y]` means a
/// path of length ≥ 1 exists.
pub fn paths(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for &(x, y) in edges {
        r[x][y] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Mutual-reachability classes (singletons included), sorted.
pub fn classes(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
    let r = paths(n, edges);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&y| y == x || (r[x][y] && r[y][x])).collect();
        for &y in &class {
            seen[y] = true;
        }
        out.push(class);
    }
    out.sort();
    out
}

/// Number of walks of length `len` in a 0/1 adjacency matrix, by matrix powers.
pub fn walk_count(n: usize, edges: &BTreeSet<(usize, usize)>, len: usize) -> u128 {
    let mut m = vec![vec![0u128; n]; n];
    for &(x, y) in edges {
        m[x][y] = 1;
    }
    let mut acc: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect();
    for _ in 0..len {
        acc = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| acc[i][k] * m[k][j]).sum()).collect()).collect();
    }
    acc.iter().flatten().sum()
}

/// Some `z` within ε of the centre with, for every other position, an
/// allowed element carrying `z` within ε of that window point.
pub fn sequential_tracers(a: &GroupAction, window: &[usize], epsilon: Scalar, kernel: bool) -> Vec<usize> {
    let n = a.space().len();
    let d = dist(a);
    let id = identity(n);
    let g: Vec<Table> = group(a).into_iter().filter(|e| kernel || *e != id).collect();
    let c = window.len() / 2;
    (0..n)
        .filter(|&z| d[z][window[c]] < epsilon)
        .filter(|&z| {
            window
                .iter()
                .enumerate()
                .all(|(i, &p)| i == c || g.iter().any(|e| d[e[z]][p] < epsilon))
        })
        .collect()
}

/// Walks of length `2l` in the step graph.
pub fn windows(a: &GroupAction, delta: Scalar, l: usize) -> Vec<Vec<usize>> {
    let n = a.space().len();
    let edges = step_edges(a, delta);
    let mut out: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    for _ in 0..2 * l {
        out = out
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                let edges = &edges;
                (0..n).filter(move |&y| edges.contains(&(last, y))).map(move |y| {
                    let mut v = w.clone();
                    v.push(y);
                    v
                })
            })
            .collect();
    }
    out
}

/// Largest δ in `values` with every window ε-sequentially traced.
pub fn ssp_sweep(a: &GroupAction, epsilon: Scalar, l: usize, values: &[Scalar], kernel: bool) -> Scalar {
    let mut best = Scalar::default();
    for &delta in values.iter().filter(|v| **v > Scalar::default()) {
        if windows(a, delta, l).iter().all(|w| !sequential_tracers(a, w, epsilon, kernel).is_empty()) {
            best = delta;
        } else {
            break;
        }
    }
    best
}

/// All maps between two finite index sets, as tables.
pub fn all_maps(from: usize, to: usize) -> Vec<Table> {
    let mut out = vec![Vec::new()];
    for _ in 0..from {
        out = out.into_iter().flat_map(|t: Table| (0..to).map(move |y| {
            let mut v = t.clone();
            v.push(y);
            v
        })).collect();
    }
    out
}

/// `max(d_H(i(X), Y), max |d(i a, i b) − d(a, b)|)` on bounded metrics.
pub fn iso_defect(dx: &[Vec<Scalar>], dy: &[Vec<Scalar>], i: &Table) -> Scalar {
    let cover = (0..dy.len()).map(|y| i.iter().map(|&t| bounded(dy[y][t])).min().unwrap()).max().unwrap();
    let mut dist = Scalar::default();
    for a in 0..dx.len() {
        for b in 0..dx.len() {
            let diff = bounded(dy[i[a]][i[b]]) - bounded(dx[a][b]);
            dist = dist.max(if diff < Scalar::default() { -diff } else { diff });
        }
    }
    cover.max(dist)
}

/// `max_{s, y} d(Φ_s(i y), i(Ψ_s y))` for `i: Y → X`, generators matched by
/// position.
pub fn equi_defect(phi: &GroupAction, psi: &GroupAction, i: &Table) -> Scalar {
    let dx = dist(phi);
    let (tp, tq) = (tables(phi), tables(psi));
    let mut worst = Scalar::default();
    for s in 0..tp.len() {
        for y in 0..i.len() {
            worst = worst.max(bounded(dx[tp[s][i[y]]][i[tq[s][y]]]));
        }
    }
    worst
}

pub fn gh_space(dx: &[Vec<Scalar>], dy: &[Vec<Scalar>]) -> Scalar {
    let f = all_maps(dx.len(), dy.len()).iter().map(|i| iso_defect(dx, dy, i)).min().unwrap();
    let g = all_maps(dy.len(), dx.len()).iter().map(|j| iso_defect(dy, dx, j)).min().unwrap();
    f.max(g)
}

/// Strong distance: min over `i: Y → X`.
pub fn strong(phi: &GroupAction, psi: &GroupAction) -> Scalar {
    let (dx, dy) = (dist(phi), dist(psi));
    all_maps(dy.len(), dx.len())
        .iter()
        .map(|i| iso_defect(&dy, &dx, i).max(equi_defect(phi, psi, i)))
        .min()
        .unwrap()
}

/// `x R_δ y` on the ball of radius `k`: some δ-pseudo-orbit takes `x` at `h`
/// and `y` at a distinct `h'`, found by enumerating every assignment.
pub fn chain_related(a: &GroupAction, k: usize, delta: Scalar, x: usize, y: usize, kernel: bool) -> bool {
    if x == y && kernel {
        return true;
    }
    let elements: Vec<Table> = ball(a, k).into_keys().collect();
    let mut found = false;
    for_each_assignment(a.space().len(), &elements, |f| {
        if found || pseudo_orbit_defect(a, &elements, f) >= delta {
            return;
        }
        found = elements.iter().any(|h| f[h] == x && elements.iter().any(|h2| h2 != h && f[h2] == y));
    });
    found
}

/// Points fixed by the `m`-th power of every generator.
pub fn fixed_by_power(a: &GroupAction, m: i32) -> Vec<usize> {
    let n = a.space().len();
    let gens: Vec<Table> = tables(a)
        .into_iter()
        .map(|t| {
            let base = if m < 0 { invert(&t) } else { t };
            (0..m.unsigned_abs()).fold(identity(n), |acc, _| compose(&base, &acc))
        })
        .collect();
    (0..n).filter(|&x| gens.iter().all(|g| g[x] == x)).collect()
}

/// Smallest word length `r` such that agreeing within `c` on every element of
/// length ≤ `r` forces `d(x, y) < ε`.
pub fn separation_horizon(a: &GroupAction, x: usize, epsilon: Scalar, c: Scalar, max: usize) -> Option<usize> {
    let d = dist(a);
    let n = a.space().len();
    (0..=max).find(|&r| {
        let elements: Vec<Table> = ball(a, r).into_keys().collect();
        (0..n).all(|y| elements.iter().any(|g| d[g[x]][g[y]] > c) || d[x][y] < epsilon)
    })
}

/// `{0, 1} ∪ {d(Φ_s x, y)}`, sorted.
pub fn ladder_values(a: &GroupAction) -> Vec<Scalar> {
    let d = dist(a);
    let mut v: BTreeSet<Scalar> = BTreeSet::from([Scalar::from_integer(0), Scalar::from_integer(1)]);
    for t in tables(a) {
        for x in 0..t.len() {
            for y in 0..t.len() {
                v.insert(d[t[x]][y]);
            }
        }
    }
    v.into_iter().collect()
}

/// Whether some bijection `i: Y → X` has zero distortion and zero
/// equivariance defect, by scanning all permutations (Heap's algorithm).
pub fn has_exact_conjugacy(phi: &GroupAction, psi: &GroupAction) -> bool {
    let (dx, dy) = (dist(phi), dist(psi));
    let n = dx.len();
    if dy.len() != n {
        return false;
    }
    let zero = Scalar::default();
    let ok = |i: &Table| iso_defect(&dy, &dx, i) == zero && equi_defect(phi, psi, i) == zero;
    let mut p = identity(n);
    if ok(&p) {
        return true;
    }
    let mut c = vec![0usize; n];
    let mut k = 0;
    while k < n {
        if c[k] < k {
            if k % 2 == 0 {
                p.swap(0, k);
            } else {
                p.swap(c[k], k);
            }
            if ok(&p) {
                return true;
            }
            c[k] += 1;
            k = 0;
        } else {
            c[k] = 0;
            k += 1;
        }
    }
    false
}
