//! Deterministic output helpers: floats printed with 17 significant digits
//! so reruns diff byte-for-byte, and a small writer that targets stdout or a
//! file uniformly.

use anyhow::{Context, Result};
use std::io::Write;
use std::path::Path;

/// 17 significant digits, scientific.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_out(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(content.as_bytes()).context("writing stdout")
        }
    }
}

/// Minimal JSON emitter with caller-controlled key order and float format.
pub struct JsonRecord {
    buf: String,
    first: bool,
}

impl JsonRecord {
    pub fn new() -> Self {
        Self { buf: String::from("{"), first: true }
    }

    fn key(&mut self, key: &str) {
        if !self.first {
            self.buf.push(',');
        }
        self.first = false;
        self.buf.push('"');
        self.buf.push_str(key);
        self.buf.push_str("\":");
    }

    pub fn string(&mut self, key: &str, value: &str) -> &mut Self {
        self.key(key);
        self.buf.push('"');
        self.buf.push_str(value);
        self.buf.push('"');
        self
    }

    pub fn number(&mut self, key: &str, value: f64) -> &mut Self {
        self.key(key);
        self.buf.push_str(&fmt(value));
        self
    }

    pub fn integer(&mut self, key: &str, value: u64) -> &mut Self {
        self.key(key);
        self.buf.push_str(&value.to_string());
        self
    }

    pub fn boolean(&mut self, key: &str, value: bool) -> &mut Self {
        self.key(key);
        self.buf.push_str(if value { "true" } else { "false" });
        self
    }

    pub fn numbers(&mut self, key: &str, values: &[f64]) -> &mut Self {
        self.key(key);
        self.buf.push('[');
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            self.buf.push_str(&fmt(*v));
        }
        self.buf.push(']');
        self
    }

    pub fn integers(&mut self, key: &str, values: &[u64]) -> &mut Self {
        self.key(key);
        self.buf.push('[');
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            self.buf.push_str(&v.to_string());
        }
        self.buf.push(']');
        self
    }

    pub fn nested(&mut self, key: &str, inner: JsonRecord) -> &mut Self {
        self.key(key);
        self.buf.push_str(&inner.finish());
        self
    }

    pub fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf
    }
}
