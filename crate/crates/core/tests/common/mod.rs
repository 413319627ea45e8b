//! Independent oracles for integration tests. Nothing here calls the
//! library's rescaling, aggregation or tour code.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub fn fixture_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Direct min-max formula `M - (M - m)(y - a)/(y - x)`.
pub fn lre(a: f64, x: f64, y: f64, m: f64, big_m: f64) -> f64 {
    big_m - (big_m - m) * ((y - a) / (y - x))
}

/// Endpoint-flip form of the fuzzy rescaling: the reflected triplet
/// `(y - a3, y - a2, y - a1)` is scaled, and the outer endpoints are picked
/// with min/max before subtracting from `M`.
pub fn tfr_by_reflection(a: [f64; 3], x: f64, y: f64, m: f64, big_m: f64) -> [f64; 3] {
    let r = [(y - a[2]) / (y - x), (y - a[1]) / (y - x), (y - a[0]) / (y - x)];
    let lower = (big_m - m) * r[0].min(r[2]);
    let upper = (big_m - m) * r[0].max(r[2]);
    [big_m - lower.max(upper), big_m - (big_m - m) * r[1], big_m - lower.min(upper)]
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Great-circle distance, written independently of the library.
pub fn haversine(lon1: f64, lat1: f64, lon2: f64, lat2: f64) -> f64 {
    const R: f64 = 6371.0088;
    let (p1, p2) = (lat1.to_radians(), lat2.to_radians());
    let dp = p2 - p1;
    let dl = (lon2 - lon1).to_radians();
    let h = (dp / 2.0).sin().powi(2) + p1.cos() * p2.cos() * (dl / 2.0).sin().powi(2);
    2.0 * R * h.sqrt().min(1.0).asin()
}

/// Visits every permutation of `items` (Heap's algorithm).
pub fn for_each_permutation(items: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    fn heap(k: usize, a: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(a);
            return;
        }
        for i in 0..k {
            heap(k - 1, a, f);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let n = items.len();
    heap(n, items, f);
}

/// Shortest closed circuit from `start` by exhaustive enumeration, with the
/// path length summed in visiting order.
pub fn brute_force_circuit(dist: &dyn Fn(usize, usize) -> f64, n: usize, start: usize) -> f64 {
    if n == 1 {
        return 0.0;
    }
    let mut rest: Vec<usize> = (0..n).filter(|&i| i != start).collect();
    let mut best = f64::INFINITY;
    for_each_permutation(&mut rest, &mut |perm| {
        let mut len = 0.0;
        let mut prev = start;
        for &p in perm {
            len += dist(prev, p);
            prev = p;
        }
        len += dist(prev, start);
        if len < best {
            best = len;
        }
    });
    best
}

pub fn parse_tfn(s: &str) -> [f64; 3] {
    let v: Vec<f64> = s.split(';').map(|p| p.trim().parse().unwrap()).collect();
    [v[0], v[1], v[2]]
}

/// Factor rows `(id, x, y, weight)` from a catalogue CSV, parsed by hand.
pub fn read_factor_rows(path: &Path) -> Vec<(String, f64, f64, f64)> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].to_owned(), c[2].parse().unwrap(), c[3].parse().unwrap(), c[4].parse().unwrap())
        })
        .collect()
}

/// Centroid of the weighted-average FTV for every attraction in a fixture,
/// computed straight from the CSV files: expert mean per factor, endpoint-wise
/// min-max rescaling, weighted sum divided by the weight total.
pub fn pipeline_oracle(dir: &Path, m: f64, big_m: f64) -> BTreeMap<String, ([f64; 3], f64)> {
    let factors = read_factor_rows(&dir.join("factors.csv"));
    let wsum: f64 = factors.iter().map(|f| f.3).sum();
    let mut scores: BTreeMap<(String, String), Vec<[f64; 3]>> = BTreeMap::new();
    for l in std::fs::read_to_string(dir.join("evaluations.csv")).unwrap().lines().skip(1) {
        let c: Vec<&str> = l.split(',').collect();
        scores.entry((c[0].to_owned(), c[1].to_owned())).or_default().push(parse_tfn(c[3]));
    }
    let attractions: Vec<String> = {
        let mut v: Vec<String> = scores.keys().map(|k| k.0.clone()).collect();
        v.dedup();
        v
    };
    let mut out = BTreeMap::new();
    for a in attractions {
        let mut ftv = [0.0; 3];
        for (id, x, y, w) in &factors {
            let ts = &scores[&(a.clone(), id.clone())];
            for k in 0..3 {
                let mean = ts.iter().map(|t| t[k]).sum::<f64>() / ts.len() as f64;
                ftv[k] += w / wsum * lre(mean, *x, *y, m, big_m);
            }
        }
        out.insert(a, (ftv, (ftv[0] + ftv[1] + ftv[2]) / 3.0));
    }
    out
}
