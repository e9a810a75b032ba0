//! The line-oriented instance file format.
//!
//! An instance file describes a coincidence pair and, optionally, a covering
//! and per-class point configurations:
//!
//! ```text
//! group M order 2
//! table
//! 0 1
//! 1 0
//! endtable
//! group N order 1
//! table
//! 0
//! endtable
//! char wM : + -
//! char wN : +
//! hom f : M -> N : 0 0
//! hom g : M -> N : 0 0
//! covering : KM { 0 } KN { 0 }
//! config
//! class 0 : labels 0
//! endconfig
//! ```
//!
//! Tokens are whitespace-separated; `#` starts a comment; blank lines are
//! skipped. Sections appear in the fixed order above; `covering` and
//! `config` are optional. All element encodings are 0-based indices with the
//! identity at 0.

use std::fmt::Write as _;

use thiserror::Error;

use coincidence_core::{
    ClassConfiguration, CoincidencePair, FiniteGroup, Homomorphism, OrientationCharacter,
    RegularCovering, Sign, Subgroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("validation error at line {line}: {cause}")]
    Validation { line: usize, cause: String },
    #[error("missing section: {section}")]
    MissingSection { section: &'static str },
}

/// A fully validated instance: the pair, plus optional covering and
/// configurations.
#[derive(Clone, Debug)]
pub struct Instance {
    pub pair: CoincidencePair,
    pub covering: Option<RegularCovering>,
    /// `Some` iff the file had a `config` section; one entry per `class`
    /// line, in file order.
    pub configs: Option<Vec<ClassConfiguration>>,
}

impl Instance {
    pub fn parse(text: &str) -> Result<Instance, ParseError> {
        Parser::new(text).parse()
    }

    /// Configurations for every class of the pair, filling classes without a
    /// `class` line with empty configurations. Returns `None` when the file
    /// had no `config` section at all.
    pub fn configs_for_all_classes(&self) -> Option<Vec<ClassConfiguration>> {
        let given = self.configs.as_ref()?;
        let mut out = Vec::new();
        for class in self.pair.reidemeister_classes() {
            let found = given
                .iter()
                .find(|c| c.class().representative() == class.representative());
            out.push(match found {
                Some(config) => config.clone(),
                None => ClassConfiguration::empty(self.pair.clone(), class),
            });
        }
        Some(out)
    }

    /// Canonical text form; parsing it back yields an equivalent instance.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let group_table = |out: &mut String, name: &str, group: &FiniteGroup| {
            let _ = writeln!(out, "group {name} order {}", group.order());
            let _ = writeln!(out, "table");
            for a in group.elements() {
                let row: Vec<String> = group
                    .elements()
                    .map(|b| group.mul(a, b).to_string())
                    .collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
            let _ = writeln!(out, "endtable");
        };
        group_table(&mut out, "M", self.pair.source());
        group_table(&mut out, "N", self.pair.target());
        let char_line = |out: &mut String, name: &str, w: &OrientationCharacter| {
            let signs: Vec<String> = w.signs().iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "char {name} : {}", signs.join(" "));
        };
        char_line(&mut out, "wM", self.pair.w_source());
        char_line(&mut out, "wN", self.pair.w_target());
        let hom_line = |out: &mut String, name: &str, h: &Homomorphism| {
            let images: Vec<String> = h.images().iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "hom {name} : M -> N : {}", images.join(" "));
        };
        hom_line(&mut out, "f", self.pair.phi());
        hom_line(&mut out, "g", self.pair.psi());
        if let Some(cov) = &self.covering {
            let fmt_set = |members: &[usize]| {
                members
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let _ = writeln!(
                out,
                "covering : KM {{ {} }} KN {{ {} }}",
                fmt_set(cov.k_source().members()),
                fmt_set(cov.k_target().members())
            );
        }
        if let Some(configs) = &self.configs {
            let _ = writeln!(out, "config");
            for config in configs {
                let mut line = format!(
                    "class {} : labels",
                    config.class().representative()
                );
                for &label in config.labels() {
                    let _ = write!(line, " {label}");
                }
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(out, "endconfig");
        }
        out
    }
}

/// One content line: original line number plus its whitespace tokens.
struct Line {
    number: usize,
    tokens: Vec<String>,
}

struct Parser {
    lines: Vec<Line>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Parser {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("");
                let tokens: Vec<String> =
                    content.split_whitespace().map(str::to_owned).collect();
                if tokens.is_empty() {
                    None
                } else {
                    Some(Line {
                        number: i + 1,
                        tokens,
                    })
                }
            })
            .collect();
        Parser { lines, at: 0 }
    }

    fn peek(&self) -> Option<&Line> {
        self.lines.get(self.at)
    }

    fn next_line(&mut self, section: &'static str) -> Result<&Line, ParseError> {
        let line = self
            .lines
            .get(self.at)
            .ok_or(ParseError::MissingSection { section })?;
        self.at += 1;
        Ok(line)
    }

    /// Like [`Parser::next_line`], but for continuation lines of an open
    /// construct: running out of input mid-construct is a syntax error.
    fn next_in_construct(&mut self, what: &str) -> Result<&Line, ParseError> {
        let eof = ParseError::Syntax {
            line: self.lines.last().map_or(1, |l| l.number + 1),
            message: format!("unexpected end of input, expected {what}"),
        };
        let line = self.lines.get(self.at).ok_or(eof)?;
        self.at += 1;
        Ok(line)
    }

    fn syntax(line: &Line, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: line.number,
            message: message.into(),
        }
    }

    fn validation(number: usize, cause: impl ToString) -> ParseError {
        ParseError::Validation {
            line: number,
            cause: cause.to_string(),
        }
    }

    fn parse_index(line: &Line, token: &str, what: &str) -> Result<usize, ParseError> {
        token
            .parse::<usize>()
            .map_err(|_| Self::syntax(line, format!("expected {what}, got `{token}`")))
    }

    fn parse(mut self) -> Result<Instance, ParseError> {
        let group_m = self.group("M")?;
        let group_n = self.group("N")?;
        let w_m = self.character("wM", &group_m)?;
        let w_n = self.character("wN", &group_n)?;
        let phi = self.hom("f", &group_m, &group_n)?;
        let psi = self.hom("g", &group_m, &group_n)?;
        let pair_line = self.lines.first().map_or(1, |l| l.number);
        let pair = CoincidencePair::new(phi, psi, w_m, w_n)
            .map_err(|e| Self::validation(pair_line, e))?;
        let covering = self.covering(&pair)?;
        let configs = self.configs(&pair)?;
        if let Some(line) = self.peek() {
            return Err(Self::syntax(line, "unexpected trailing content"));
        }
        Ok(Instance {
            pair,
            covering,
            configs,
        })
    }

    fn group(&mut self, name: &str) -> Result<FiniteGroup, ParseError> {
        let line = self.next_line("group")?;
        let tokens: Vec<&str> = line.tokens.iter().map(String::as_str).collect();
        let order = match tokens.as_slice() {
            ["group", n, "order", count] if *n == name => {
                Self::parse_index(line, count, "group order")?
            }
            _ => return Err(Self::syntax(line, format!("expected `group {name} order <n>`"))),
        };
        let header_number = line.number;
        let line = self.next_in_construct("table")?;
        if line.tokens != ["table"] {
            return Err(Self::syntax(line, "expected `table`"));
        }
        let mut rows = Vec::with_capacity(order);
        for _ in 0..order {
            let line = self.next_in_construct("a table row")?;
            if line.tokens == ["endtable"] {
                return Err(Self::syntax(line, "table ended early"));
            }
            let row = line
                .tokens
                .iter()
                .map(|t| Self::parse_index(line, t, "table entry"))
                .collect::<Result<Vec<usize>, ParseError>>()?;
            if row.len() != order {
                return Err(Self::syntax(
                    line,
                    format!("expected {order} entries, got {}", row.len()),
                ));
            }
            rows.push(row);
        }
        let line = self.next_in_construct("endtable")?;
        if line.tokens != ["endtable"] {
            return Err(Self::syntax(line, "expected `endtable`"));
        }
        FiniteGroup::new(rows).map_err(|e| Self::validation(header_number, e))
    }

    fn character(
        &mut self,
        name: &str,
        group: &FiniteGroup,
    ) -> Result<OrientationCharacter, ParseError> {
        let line = self.next_line("char")?;
        let tokens: Vec<&str> = line.tokens.iter().map(String::as_str).collect();
        let signs = match tokens.as_slice() {
            ["char", n, ":", rest @ ..] if *n == name => rest
                .iter()
                .map(|&t| match t {
                    "+" => Ok(Sign::Plus),
                    "-" => Ok(Sign::Minus),
                    other => Err(Self::syntax(line, format!("expected + or -, got `{other}`"))),
                })
                .collect::<Result<Vec<Sign>, ParseError>>()?,
            _ => return Err(Self::syntax(line, format!("expected `char {name} : <signs>`"))),
        };
        OrientationCharacter::new(group.clone(), signs)
            .map_err(|e| Self::validation(line.number, e))
    }

    fn hom(
        &mut self,
        name: &str,
        source: &FiniteGroup,
        target: &FiniteGroup,
    ) -> Result<Homomorphism, ParseError> {
        let line = self.next_line("hom")?;
        let tokens: Vec<&str> = line.tokens.iter().map(String::as_str).collect();
        let images = match tokens.as_slice() {
            ["hom", n, ":", "M", "->", "N", ":", rest @ ..] if *n == name => rest
                .iter()
                .map(|&t| Self::parse_index(line, t, "image index"))
                .collect::<Result<Vec<usize>, ParseError>>()?,
            _ => {
                return Err(Self::syntax(
                    line,
                    format!("expected `hom {name} : M -> N : <images>`"),
                ))
            }
        };
        Homomorphism::new(source.clone(), target.clone(), images)
            .map_err(|e| Self::validation(line.number, e))
    }

    fn covering(&mut self, pair: &CoincidencePair) -> Result<Option<RegularCovering>, ParseError> {
        let Some(line) = self.peek() else {
            return Ok(None);
        };
        if line.tokens.first().map(String::as_str) != Some("covering") {
            return Ok(None);
        }
        let line = self.next_line("covering")?;
        let tokens: Vec<&str> = line.tokens.iter().map(String::as_str).collect();
        // covering : KM { ... } KN { ... }
        let rest = match tokens.as_slice() {
            ["covering", ":", rest @ ..] => rest,
            _ => return Err(Self::syntax(line, "expected `covering : KM { .. } KN { .. }`")),
        };
        let (km, rest) = Self::braced_set(line, rest, "KM")?;
        let (kn, rest) = Self::braced_set(line, rest, "KN")?;
        if !rest.is_empty() {
            return Err(Self::syntax(line, "unexpected tokens after covering"));
        }
        let k_m = Subgroup::from_members(pair.source(), &km)
            .map_err(|e| Self::validation(line.number, format!("KM: {e}")))?;
        let k_n = Subgroup::from_members(pair.target(), &kn)
            .map_err(|e| Self::validation(line.number, format!("KN: {e}")))?;
        let covering = RegularCovering::new(pair, k_m, k_n)
            .map_err(|e| Self::validation(line.number, e))?;
        Ok(Some(covering))
    }

    fn braced_set<'a>(
        line: &Line,
        tokens: &'a [&'a str],
        name: &str,
    ) -> Result<(Vec<usize>, &'a [&'a str]), ParseError> {
        match tokens {
            [n, "{", rest @ ..] if *n == name => {
                let close = rest
                    .iter()
                    .position(|&t| t == "}")
                    .ok_or_else(|| Self::syntax(line, format!("unclosed {{ for {name}")))?;
                let members = rest[..close]
                    .iter()
                    .map(|&t| Self::parse_index(line, t, "subgroup member"))
                    .collect::<Result<Vec<usize>, ParseError>>()?;
                Ok((members, &rest[close + 1..]))
            }
            _ => Err(Self::syntax(line, format!("expected `{name} {{ .. }}`"))),
        }
    }

    fn configs(
        &mut self,
        pair: &CoincidencePair,
    ) -> Result<Option<Vec<ClassConfiguration>>, ParseError> {
        let Some(line) = self.peek() else {
            return Ok(None);
        };
        if line.tokens != ["config"] {
            return Ok(None);
        }
        self.at += 1;
        let mut configs: Vec<ClassConfiguration> = Vec::new();
        loop {
            let line = self.next_in_construct("endconfig")?;
            if line.tokens == ["endconfig"] {
                break;
            }
            let tokens: Vec<&str> = line.tokens.iter().map(String::as_str).collect();
            let (alpha, labels) = match tokens.as_slice() {
                ["class", alpha, ":", "labels", rest @ ..] => {
                    let alpha = Self::parse_index(line, alpha, "class representative")?;
                    let labels = rest
                        .iter()
                        .map(|&t| Self::parse_index(line, t, "label index"))
                        .collect::<Result<Vec<usize>, ParseError>>()?;
                    (alpha, labels)
                }
                _ => {
                    return Err(Self::syntax(
                        line,
                        "expected `class <alpha> : labels <indices>`",
                    ))
                }
            };
            if alpha >= pair.target().order() {
                return Err(Self::validation(
                    line.number,
                    format!(
                        "class representative {alpha} outside [0, {})",
                        pair.target().order()
                    ),
                ));
            }
            let class = pair.class_of(alpha);
            if configs
                .iter()
                .any(|c| c.class().representative() == class.representative())
            {
                return Err(Self::validation(
                    line.number,
                    format!(
                        "duplicate configuration for the class of {}",
                        class.representative()
                    ),
                ));
            }
            let config = ClassConfiguration::new(pair.clone(), class, labels)
                .map_err(|e| Self::validation(line.number, e))?;
            configs.push(config);
        }
        Ok(Some(configs))
    }
}
