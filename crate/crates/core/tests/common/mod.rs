#![allow(dead_code)]

use stanley_bij::factorization::{for_each, FactorizationType, MinimalFactorization};

/// Calls `visit` on every admissible factorization with the given `k`.
pub fn each_admissible(k: usize, mut visit: impl FnMut(&MinimalFactorization)) {
    for t in FactorizationType::admissible_with_k(k) {
        for_each(&t, |fs| visit(&MinimalFactorization::from_parts(k, fs.to_vec())));
    }
}
