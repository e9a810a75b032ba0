//! Reports: human-readable lines plus ordered machine key/value lines.
//!
//! Machine lines are a deterministic function of the instance and use the
//! stable key scheme `pair.type`, `class.<rep>.size`, `class.<rep>.stab`,
//! `class.<rep>.defective`, `class.<rep>.semiindex`, `class.<rep>.lift.T`,
//! `class.<rep>.lift.k`, `class.<rep>.lift.classes`,
//! `class.<rep>.lift.formula`, `class.<rep>.lift.oracle`, `nielsen.down`,
//! `nielsen.up`. List-valued entries are space-joined.

use std::fmt::Display;

/// An accumulating report. Human lines never contain the ` = ` separator, so
/// the machine section can be extracted mechanically.
#[derive(Clone, Debug, Default)]
pub struct Report {
    human: Vec<String>,
    machine: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn say(&mut self, line: impl Into<String>) {
        let line = line.into();
        debug_assert!(!line.contains(" = "), "human line looks like a machine line");
        self.human.push(line);
    }

    pub fn kv(&mut self, key: impl Into<String>, value: impl Display) {
        self.machine.push((key.into(), value.to_string()));
    }

    pub fn kv_list<T: Display>(&mut self, key: impl Into<String>, values: &[T]) {
        let joined = values
            .iter()
            .map(T::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        self.machine.push((key.into(), joined));
    }

    pub fn absorb(&mut self, other: Report) {
        self.human.extend(other.human);
        self.machine.extend(other.machine);
    }

    /// Prefixes every machine key; used by batch mode to keep keys unique.
    pub fn with_key_prefix(mut self, prefix: &str) -> Report {
        for (key, _) in &mut self.machine {
            *key = format!("{prefix}.{key}");
        }
        self
    }

    pub fn machine_lines(&self) -> Vec<String> {
        self.machine
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect()
    }

    /// Full rendering: human lines, then (with `machine`) the key/value
    /// lines appended.
    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        for line in &self.human {
            out.push_str(line);
            out.push('\n');
        }
        if machine {
            for line in self.machine_lines() {
                out.push_str(&line);
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_lines_are_appended_in_order() {
        let mut r = Report::new();
        r.say("hello");
        r.kv("a.b", 1);
        r.kv_list("c", &[2, 3]);
        assert_eq!(r.render(false), "hello\n");
        assert_eq!(r.render(true), "hello\na.b = 1\nc = 2 3\n");
    }

    #[test]
    fn key_prefixing() {
        let mut r = Report::new();
        r.kv("x", 1);
        let r = r.with_key_prefix("file");
        assert_eq!(r.machine_lines(), vec!["file.x = 1"]);
    }
}
