//! CSV emission with a `#`-prefixed provenance header. No timestamps: a
//! fixed config and build must produce byte-identical output.

use std::io::Write;
use std::path::Path;

use cpshield::QuadratureSpec;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

pub struct CsvDoc {
    pub subcommand: &'static str,
    pub config_hash: u64,
    pub quad: QuadratureSpec,
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl CsvDoc {
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "# cpshield {} {}\n",
            env!("CARGO_PKG_VERSION"),
            self.subcommand
        ));
        s.push_str(&format!("# config fnv1a64 {:016x}\n", self.config_hash));
        s.push_str(&format!(
            "# rel_tol {:e} abs_tol {:e} max_refinements {}\n",
            self.quad.rel_tol, self.quad.abs_tol, self.quad.max_refinements
        ));
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, out: Option<&Path>) -> std::io::Result<()> {
        let text = self.render();
        match out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().write_all(text.as_bytes()),
        }
    }
}
