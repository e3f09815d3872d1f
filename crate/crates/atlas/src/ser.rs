use std::fmt::Display;

use serde::Serializer;

/// Serializes big integers as decimal strings.
pub fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
