use serde::Serialize;

/// Pretty-free, newline-terminated JSON.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

/// Minimal CSV: the fields written here never contain commas or quotes.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Csv { buf: String::new() };
        csv.row(header.iter().copied());
        csv
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.buf.push(',');
            }
            first = false;
            self.buf.push_str(f.as_ref());
        }
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Decimal-string rendering used for every integer in JSON output.
pub fn dec<T: ToString>(v: &T) -> String {
    v.to_string()
}
