use std::io::Write;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};

use crate::error::{Error, Result};

/// Compact JSON with every float written with 17 significant digits, so
/// values survive a text round trip bit for bit.
#[derive(Debug, Clone, Copy, Default)]
struct RoundTrip;

impl Formatter for RoundTrip {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> std::io::Result<()> {
        CompactFormatter.write_f32(w, value)
    }
}

pub fn write_json<W: Write, T: Serialize>(w: W, value: &T) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(w, RoundTrip);
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    write_json(&mut buf, value)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        let xs = vec![0.1, -1.0 / 3.0, 1e-300, 2.5, 0.0];
        let s = to_json_string(&xs).unwrap();
        assert!(s.contains("1.0000000000000001e-1"));
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, xs);
    }
}
