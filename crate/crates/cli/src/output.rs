//! Machine output: one JSON object per line on stdout (or `--out`), each
//! carrying the version, the seed and the resolved configuration.

use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

pub const VERSION: &str = env!("DOUBLEJUMP_BUILD_VERSION");

#[derive(Serialize)]
pub struct RunConfig<'a, P: Serialize> {
    pub command: &'a str,
    pub version: &'a str,
    pub seed: u64,
    pub threads: usize,
    pub params: &'a P,
}

#[derive(Serialize)]
struct Record<'a, P: Serialize, R: Serialize> {
    #[serde(flatten)]
    run: &'a RunConfig<'a, P>,
    result: &'a R,
}

pub struct Sink {
    w: Box<dyn Write>,
}

impl Sink {
    pub fn open(out: Option<&Path>) -> io::Result<Sink> {
        let w: Box<dyn Write> = match out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Sink { w })
    }

    pub fn record<P: Serialize, R: Serialize>(
        &mut self,
        run: &RunConfig<P>,
        result: &R,
    ) -> io::Result<()> {
        serde_json::to_writer(&mut self.w, &Record { run, result })?;
        self.w.write_all(b"\n")
    }

    /// Writes `text` verbatim; the caller has put seed and version in it.
    pub fn raw(&mut self, text: &str) -> io::Result<()> {
        self.w.write_all(text.as_bytes())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_keys_come_in_a_fixed_order() {
        #[derive(Serialize)]
        struct P {
            z: u8,
            a: u8,
        }
        let params = P { z: 1, a: 2 };
        let run = RunConfig {
            command: "demo",
            version: "v",
            seed: 4,
            threads: 1,
            params: &params,
        };
        let text = serde_json::to_string(&Record {
            run: &run,
            result: &[1.5],
        })
        .unwrap();
        assert_eq!(
            text,
            r#"{"command":"demo","version":"v","seed":4,"threads":1,"params":{"z":1,"a":2},"result":[1.5]}"#
        );
    }

    #[test]
    fn version_names_the_package() {
        assert!(VERSION.starts_with(env!("CARGO_PKG_VERSION")));
    }
}
