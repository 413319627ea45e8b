//! Acceptance checks. Each test prints one `PASS`/`FAIL` line; run with
//! `--nocapture` (and `--test-threads=1` for tidy output) to see them.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::time::{Duration, Instant};

use common::{brute_force_circuit, fixture_dir, haversine, lre, pipeline_oracle, tfr_by_reflection};
use ftv_core::ahp::{derive_weights, validate_weights, PairwiseMatrix};
use ftv_core::pipeline::{run_pipeline, RunConfig, MAP_GEOJSON, RESULTS_CSV, RESULTS_JSON};
use ftv_core::reference::{published_weights, PUBLISHED_FTV};
use ftv_core::spatial::{plan_tour, GeoPoint, HotSpot};
use ftv_core::{
    compute_ftv, crisp_tourism_value, filter_high, rank, rescale_crisp, rescale_tfn, AttractionEvaluation,
    Defuzzifier, FactorCatalogue, FactorDefinition, SourceRange, TargetRange, Tfn, Tier, TierThresholds,
    ValuationResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn report(n: u32, name: &str, outcome: Outcome) {
    match outcome {
        Ok(detail) => println!("criterion {n} {name}: PASS ({detail})"),
        Err(why) => {
            println!("criterion {n} {name}: FAIL ({why})");
            panic!("criterion {n} failed: {why}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Plain relative difference; exact zeros compare equal only to zero.
fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn sorted3(rng: &mut impl Rng, lo: f64, hi: f64) -> [f64; 3] {
    let mut v = [rng.random_range(lo..=hi), rng.random_range(lo..=hi), rng.random_range(lo..=hi)];
    v.sort_by(f64::total_cmp);
    v
}

fn ordered_pair(rng: &mut impl Rng, lo: f64, hi: f64) -> (f64, f64) {
    loop {
        let a = rng.random_range(lo..hi);
        let b = rng.random_range(lo..hi);
        if (a - b).abs() > 1e-3 {
            return (a.min(b), a.max(b));
        }
    }
}

#[test]
fn c1_fuzzy_rescale_is_endpointwise() {
    let started = Instant::now();
    let outcome = (|| -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cases = 20_000;
        let mut worst = 0.0f64;
        for i in 0..cases {
            let (x, y) = ordered_pair(&mut rng, -1000.0, 1000.0);
            let (m, big_m) = ordered_pair(&mut rng, -1000.0, 1000.0);
            let a = sorted3(&mut rng, x, y);
            let src = SourceRange::new(x, y).unwrap();
            let tgt = TargetRange::new(m, big_m).unwrap();
            let t = rescale_tfn(&Tfn::new(a[0], a[1], a[2]).unwrap(), src, tgt).map_err(|e| e.to_string())?;
            let reflected = tfr_by_reflection(a, x, y, m, big_m);
            for k in 0..3 {
                let crisp = rescale_crisp(a[k], src, tgt).map_err(|e| e.to_string())?;
                let got = t.components()[k];
                let d = rel_diff(got, crisp).max(rel_diff(got, reflected[k]));
                worst = worst.max(d);
                ensure(d <= 1e-9, || format!("case {i} component {k}: {got} vs {crisp} / {}", reflected[k]))?;
            }
        }
        let elapsed = started.elapsed();
        ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
        Ok(format!("{cases} cases, worst rel diff {worst:.1e}, {elapsed:.2?}"))
    })();
    report(1, "fuzzy rescaling equals endpoint-wise crisp rescaling", outcome);
}

#[test]
fn c2_degenerate_scores_reduce_to_crisp_index() {
    let outcome = (|| -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cases = 2_000;
        let mut worst = 0.0f64;
        for i in 0..cases {
            let k = rng.random_range(1..=12);
            let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let w: Vec<f64> = raw.iter().map(|v| v / total).collect();
            let ranges: Vec<(f64, f64)> = (0..k).map(|_| ordered_pair(&mut rng, -50.0, 50.0)).collect();
            let ratings: Vec<f64> = ranges.iter().map(|(x, y)| rng.random_range(*x..=*y)).collect();

            let defs = (0..k)
                .map(|j| {
                    let src = SourceRange::new(ranges[j].0, ranges[j].1).unwrap();
                    FactorDefinition::new(format!("f{j:02}"), format!("F{j}"), src, w[j]).unwrap()
                })
                .collect();
            let cat = FactorCatalogue::new(defs, TargetRange::new(0.0, 5.0).unwrap()).map_err(|e| e.to_string())?;
            let scores = (0..k).map(|j| (format!("f{j:02}"), Tfn::crisp(ratings[j]).unwrap())).collect();
            let ftv = compute_ftv(&AttractionEvaluation::new("a", scores), &cat).map_err(|e| e.to_string())?;
            let value = ftv.defuzzify(Defuzzifier::Centroid);

            let min: Vec<f64> = ranges.iter().map(|r| r.0).collect();
            let max: Vec<f64> = ranges.iter().map(|r| r.1).collect();
            let library = crisp_tourism_value(std::slice::from_ref(&ratings), &w, &min, &max).map_err(|e| e.to_string())?;
            let by_hand: f64 = 5.0 * (0..k).map(|j| w[j] * (ratings[j] - min[j]) / (max[j] - min[j])).sum::<f64>();

            ensure(ftv.lo() == ftv.mode() && ftv.mode() == ftv.hi(), || format!("case {i}: {ftv} not degenerate"))?;
            let d = rel_diff(value, library).max(rel_diff(value, by_hand));
            worst = worst.max(d);
            ensure(d <= 1e-9, || format!("case {i}: {value} vs {library} / {by_hand}"))?;
        }
        Ok(format!("{cases} cases, worst rel diff {worst:.1e}"))
    })();
    report(2, "degenerate scores reduce to the crisp index", outcome);
}

#[test]
fn c3_published_weight_column_tolerance() {
    let outcome = (|| -> Outcome {
        let w = published_weights();
        ensure(w.len() == 20, || format!("{} weights", w.len()))?;
        let sum: f64 = w.iter().sum();
        validate_weights(&w, 0.01).map_err(|d| format!("rejected at 0.01: {d}"))?;
        let strict = validate_weights(&w, 0.001);
        ensure(strict.is_err(), || "accepted at 0.001".into())?;
        Ok(format!("sum {sum:.4}, accepted at 0.01, rejected at 0.001"))
    })();
    report(3, "published weight column passes only the looser tolerance", outcome);
}

#[test]
fn c4_published_values_are_high_and_ranked() {
    let outcome = (|| -> Outcome {
        let tiers = TierThresholds::default();
        let expected_centroids = [85.74, 85.05, 84.09, 83.83, 83.70];
        let mut results = Vec::new();
        for ((name, v), c) in PUBLISHED_FTV.iter().zip(expected_centroids) {
            let t = Tfn::new(v[0], v[1], v[2]).unwrap();
            let r = ValuationResult::new(*name, t, Defuzzifier::Centroid, Some(&tiers)).map_err(|e| e.to_string())?;
            let hand = (v[0] + v[1] + v[2]) / 3.0;
            ensure((r.crisp - hand).abs() < 1e-12 && (r.crisp - c).abs() < 0.005, || {
                format!("{name}: centroid {}", r.crisp)
            })?;
            ensure(r.tier == Some(Tier::High), || format!("{name}: tier {:?}", r.tier))?;
            results.push(r);
        }
        // Feed them in reverse so the ordering is not inherited.
        results.reverse();
        let kept = filter_high(&results);
        ensure(kept.len() == 5, || format!("{} survived the filter", kept.len()))?;
        let ranked = rank(&kept);
        let order: Vec<&str> = ranked.iter().map(|r| r.attraction_id.as_str()).collect();
        let published: Vec<&str> = PUBLISHED_FTV.iter().map(|p| p.0).collect();
        ensure(order == published, || format!("ranked {order:?}"))?;
        ensure(order[0] == "House of the Trova", || format!("first is {}", order[0]))?;
        Ok(format!("all High, order {}", order.join(" > ")))
    })();
    report(4, "published attraction values", outcome);
}

#[test]
fn c5_negative_range_row() {
    let outcome = (|| -> Outcome {
        let src = SourceRange::new(-5.0, 0.0).unwrap();
        let t = Tfn::new(-1.18, -0.18, -0.02).unwrap();
        let got = rescale_tfn(&t, src, TargetRange::percent()).map_err(|e| e.to_string())?;
        let oracle = [-1.18, -0.18, -0.02].map(|a| lre(a, -5.0, 0.0, 0.0, 100.0));
        let published = [76.4, 96.4, 99.6];
        for k in 0..3 {
            let g = got.components()[k];
            ensure((g - oracle[k]).abs() <= 1e-9 && (g - published[k]).abs() <= 1e-9, || {
                format!("component {k}: {g} vs oracle {} / {}", oracle[k], published[k])
            })?;
        }
        Ok(format!("{got}"))
    })();
    report(5, "negative source range rescales as published", outcome);
}

#[test]
fn c6_ranking_ignores_target_range() {
    let outcome = (|| -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let catalogues = 200;
        for c in 0..catalogues {
            let k = rng.random_range(1..=10);
            let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let defs: Vec<FactorDefinition> = (0..k)
                .map(|j| {
                    let (x, y) = ordered_pair(&mut rng, -10.0, 10.0);
                    FactorDefinition::new(format!("f{j}"), "", SourceRange::new(x, y).unwrap(), raw[j] / total).unwrap()
                })
                .collect();
            let attractions: Vec<AttractionEvaluation> = (0..rng.random_range(2..=12))
                .map(|i| {
                    let scores: BTreeMap<String, Tfn> = defs
                        .iter()
                        .map(|d| {
                            let v = sorted3(&mut rng, d.src.min(), d.src.max());
                            (d.id.clone(), Tfn::new(v[0], v[1], v[2]).unwrap())
                        })
                        .collect();
                    AttractionEvaluation::new(format!("a{i:02}"), scores)
                })
                .collect();
            let mut orders = Vec::new();
            for _ in 0..2 {
                let (m, big_m) = ordered_pair(&mut rng, -500.0, 500.0);
                let cat = FactorCatalogue::new(defs.clone(), TargetRange::new(m, big_m).unwrap())
                    .map_err(|e| e.to_string())?;
                let results = attractions
                    .iter()
                    .map(|a| {
                        let ftv = compute_ftv(a, &cat)?;
                        ValuationResult::new(a.attraction_id.clone(), ftv, Defuzzifier::Centroid, None)
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                orders.push(rank(&results).into_iter().map(|r| r.attraction_id).collect::<Vec<_>>());
            }
            ensure(orders[0] == orders[1], || format!("catalogue {c}: {:?} vs {:?}", orders[0], orders[1]))?;
        }
        Ok(format!("{catalogues} catalogues, two targets each"))
    })();
    report(6, "ranking is invariant to the target range", outcome);
}

#[test]
fn c7_pairwise_weights() {
    let outcome = (|| -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst_w = 0.0f64;
        let mut worst_cr = 0.0f64;
        let mut matrices = 0;
        for n in 2..=10 {
            for _ in 0..50 {
                let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
                let total: f64 = raw.iter().sum();
                let w: Vec<f64> = raw.iter().map(|v| v / total).collect();
                let rep = derive_weights(&PairwiseMatrix::from_weights(&w).unwrap()).map_err(|e| e.to_string())?;
                for (a, b) in rep.weights.iter().zip(&w) {
                    worst_w = worst_w.max((a - b).abs());
                }
                worst_cr = worst_cr.max(rep.consistency_ratio.abs());
                ensure(worst_w <= 1e-6 && worst_cr <= 1e-6 && !rep.inconsistent, || {
                    format!("n={n}: {:?} vs {w:?}, CR {}", rep.weights, rep.consistency_ratio)
                })?;
                matrices += 1;
            }
        }
        let bad = PairwiseMatrix::new(vec![vec![1.0, 2.0, 0.5], vec![0.5, 1.0, 4.0], vec![2.0, 0.25, 1.0]]).unwrap();
        let rep = derive_weights(&bad).map_err(|e| e.to_string())?;
        ensure(rep.inconsistent && rep.consistency_ratio > 0.1, || format!("CR {}", rep.consistency_ratio))?;
        Ok(format!(
            "{matrices} consistent matrices, max weight error {worst_w:.1e}, max CR {worst_cr:.1e}; 3x3 example CR {:.3}",
            rep.consistency_ratio
        ))
    })();
    report(7, "pairwise weights and consistency", outcome);
}

fn spot(i: usize, lon: f64, lat: f64) -> HotSpot {
    HotSpot { center: GeoPoint::new(lon, lat).unwrap(), score: 1.0, label: format!("H{}", i + 1) }
}

#[test]
fn c8_tour_is_optimal() {
    let outcome = (|| -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut sets = 0;
        for n in 1..=8 {
            for _ in 0..25 {
                let hs: Vec<HotSpot> = (0..n)
                    .map(|i| spot(i, -75.83 + rng.random_range(-0.03..0.03), 20.02 + rng.random_range(-0.03..0.03)))
                    .collect();
                let tour = plan_tour(&hs, None).map_err(|e| e.to_string())?;
                let d = |i: usize, j: usize| haversine(hs[i].center.lon, hs[i].center.lat, hs[j].center.lon, hs[j].center.lat);
                let brute = brute_force_circuit(&d, n, 0);
                ensure(tour.length_km == brute, || format!("n={n}: {} vs {brute}", tour.length_km))?;
                sets += 1;
            }
        }
        // Axis-aligned square with 1 km sides around (lon0, lat0).
        let (lon0, lat0) = (-75.83f64, 20.02f64);
        let km_per_deg = 6371.0088 * std::f64::consts::PI / 180.0;
        let dlat = 0.5 / km_per_deg;
        let dlon = 0.5 / (km_per_deg * lat0.to_radians().cos());
        let corners = [(-1.0, -1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, 1.0)];
        let hs: Vec<HotSpot> = corners
            .iter()
            .enumerate()
            .map(|(i, (sx, sy))| spot(i, lon0 + sx * dlon, lat0 + sy * dlat))
            .collect();
        let tour = plan_tour(&hs, None).map_err(|e| e.to_string())?;
        let rel = (tour.length_km - 4.0).abs() / 4.0;
        ensure(rel <= 0.005, || format!("square tour {} km", tour.length_km))?;
        // Perimeter order never crosses a diagonal, so H1 and H2 are not adjacent.
        let labels = tour.labels();
        let pos = |l: &str| labels.iter().position(|x| *x == l).unwrap();
        ensure((pos("H1") as i32 - pos("H2") as i32).abs() == 2, || format!("order {labels:?}"))?;
        Ok(format!("{sets} random sets equal brute force; square {:.4} km via {}", tour.length_km, labels.join("-")))
    })();
    report(8, "tour optimality", outcome);
}

#[test]
fn c9_end_to_end_run() {
    let started = Instant::now();
    let outcome = (|| -> Outcome {
        let fixture = fixture_dir("santiago_sample");
        let mut cfg = RunConfig::load(&fixture.join("config.toml")).map_err(|e| e.to_string())?;
        let mut outputs = Vec::new();
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        for dir in &dirs {
            cfg.output.dir = dir.path().to_path_buf();
            run_pipeline(&cfg).map_err(|e| e.to_string())?;
            let files: Vec<Vec<u8>> = [RESULTS_CSV, RESULTS_JSON, MAP_GEOJSON]
                .iter()
                .map(|f| fs::read(dir.path().join(f)).unwrap())
                .collect();
            outputs.push(files);
        }
        ensure(outputs[0] == outputs[1], || "outputs differ between runs".into())?;

        let oracle = pipeline_oracle(&fixture, 0.0, 100.0);
        let json: serde_json::Value = serde_json::from_slice(&outputs[0][1]).map_err(|e| e.to_string())?;
        let rows = json["results"].as_array().ok_or("results missing")?;
        ensure(rows.len() == oracle.len(), || format!("{} results vs {} in oracle", rows.len(), oracle.len()))?;
        let mut worst = 0.0f64;
        for row in rows {
            let id = row["attraction_id"].as_str().ok_or("id missing")?;
            let (tri, crisp) = &oracle[id];
            let got = [&row["ftv"]["lo"], &row["ftv"]["mode"], &row["ftv"]["hi"], &row["crisp"]].map(|v| v.as_f64().unwrap());
            for (g, e) in got.iter().zip([tri[0], tri[1], tri[2], *crisp]) {
                worst = worst.max((g - e).abs());
            }
        }
        ensure(worst <= 1e-9, || format!("max deviation {worst:e}"))?;
        // results.csv carries six significant digits of the same values.
        let csv = String::from_utf8(outputs[0][0].clone()).unwrap();
        for line in csv.lines().skip(1) {
            let c: Vec<&str> = line.split(',').collect();
            let crisp: f64 = c[4].parse().unwrap();
            let expected = oracle[c[0]].1;
            ensure((crisp - expected).abs() <= 5e-6 * expected.abs(), || format!("{}: csv {crisp} vs {expected}", c[0]))?;
        }
        let elapsed = started.elapsed();
        ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
        Ok(format!("{} attractions, byte-identical reruns, max deviation {worst:.1e}, {elapsed:.2?}", rows.len()))
    })();
    report(9, "end-to-end run", outcome);
}
