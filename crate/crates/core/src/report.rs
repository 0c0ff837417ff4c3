//! JSON helpers shared by the CLI and the verification suite.

use std::fmt::Display;

use serde::Serializer;

pub(crate) fn ser_display<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}
