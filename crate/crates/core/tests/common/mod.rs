#![allow(dead_code)]

use neurofuzzy::inference::firing_strengths;
use neurofuzzy::MembershipGrid;
use rand::Rng;

pub fn uniform_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

pub fn random_grid<R: Rng>(rng: &mut R, rules: usize, inputs: usize, sigma: f64) -> MembershipGrid {
    MembershipGrid::new((0..rules).map(|_| uniform_vec(rng, inputs)).collect(), sigma).unwrap()
}

/// Normalized basis vector of a random input on `grid`.
pub fn random_phi<R: Rng>(rng: &mut R, grid: &MembershipGrid) -> Vec<f64> {
    let x = uniform_vec(rng, grid.inputs());
    firing_strengths(&x, grid).unwrap().normalized
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Prints one result line and fails the test if the criterion is not met.
pub fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!(
        "criterion {id:>2} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}
