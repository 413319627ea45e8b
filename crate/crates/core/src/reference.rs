//! Published reference data: the 20-factor assessment table (ranges,
//! weights, mean expert TFNs) and the five highest-valued attractions.

use crate::error::Result;
use crate::fuzzy::Tfn;

pub const CATALOGUE_CSV: &str = include_str!("../fixtures/published/factors.csv");
pub const MEAN_SCORES_CSV: &str = include_str!("../fixtures/published/mean_tfns.csv");

/// `(id, name, x, y, weight, mean score)` for each published factor.
pub type FactorRow = (String, String, f64, f64, f64, Tfn);

pub fn published_catalogue() -> Result<Vec<FactorRow>> {
    let scores: Vec<(String, Tfn)> = MEAN_SCORES_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let (id, score) = l.split_once(',').expect("fixture row");
            Ok((id.to_owned(), score.parse()?))
        })
        .collect::<Result<_>>()?;
    Ok(CATALOGUE_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .zip(scores)
        .map(|(l, (sid, score))| {
            let cols: Vec<&str> = l.split(',').collect();
            debug_assert_eq!(cols[0], sid);
            let num = |i: usize| cols[i].parse::<f64>().expect("fixture number");
            (cols[0].to_owned(), cols[1].to_owned(), num(2), num(3), num(4), score)
        })
        .collect())
}

/// The published weight column, in table order.
pub fn published_weights() -> Vec<f64> {
    published_catalogue().expect("fixture").into_iter().map(|r| r.4).collect()
}

/// The five highest published FTV triplets, in published order.
pub const PUBLISHED_FTV: [(&str, [f64; 3]); 5] = [
    ("House of the Trova", [68.57, 91.35, 97.29]),
    ("Enramadas Street", [67.32, 90.10, 97.73]),
    ("House of Diego Velázquez", [65.96, 88.74, 97.56]),
    ("Céspedes Park", [66.10, 88.88, 96.51]),
    ("The French Tomb Society La Charité d'Orient", [65.96, 88.74, 96.40]),
];
