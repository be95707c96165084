//! In-process memo caches for the hot pure functions: word images and
//! pairings. Keys embed a content digest of the zeta datum, values are
//! immutable, and a concurrent duplicate computation is harmless.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

use crate::poly::LaurentPoly;
use crate::scalar::Scalar;

static WORD_IMAGES: Lazy<Mutex<HashMap<(u64, u8, String), LaurentPoly>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

static PAIRINGS: Lazy<Mutex<HashMap<(u64, u8, String, String), Scalar>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn word_image_get(zeta: u64, sign: u8, word: &str) -> Option<LaurentPoly> {
    WORD_IMAGES
        .lock()
        .unwrap()
        .get(&(zeta, sign, word.to_string()))
        .cloned()
}

pub fn word_image_put(zeta: u64, sign: u8, word: String, value: LaurentPoly) {
    WORD_IMAGES.lock().unwrap().insert((zeta, sign, word), value);
}

pub fn pairing_get(zeta: u64, side: u8, word: &str, poly: &str) -> Option<Scalar> {
    PAIRINGS
        .lock()
        .unwrap()
        .get(&(zeta, side, word.to_string(), poly.to_string()))
        .cloned()
}

pub fn pairing_put(zeta: u64, side: u8, word: String, poly: String, value: Scalar) {
    PAIRINGS.lock().unwrap().insert((zeta, side, word, poly), value);
}
