//! Optical-train files (`.pol`).
//!
//! One statement per line, `#` to end of line is a comment, LF or CRLF:
//!
//! ```text
//! beam angles theta=<r> phi=<r> chi=<r> amp=<r>
//! beam stokes s0=<r> s1=<r> s2=<r> s3=<r>
//! beam jones  a1=<r> a2=<r> phi1=<r> phi2=<r>
//! shifter d1=<r> d2=<r>
//! rotate  alpha=<r>
//! gyro    d1=<r> d2=<r>
//! qwp     axis=<r>
//! hwp     axis=<r>
//! atten   e1=<r> e2=<r>
//! ```
//!
//! Keys may appear in any order. Values are decimal floats in radians, or
//! `deg(<r>)` for degrees. Elements act in file order: the first element
//! listed is the first one the beam passes through.

use std::f64::consts::PI;
use std::fmt;

use polspin_core::{FilterElement, PolError};

use crate::beam::{AnglesSpec, BeamSpec, JonesSpec};
use crate::format::fmt_f64;

/// Exponents above this push amplitudes towards the bottom of the `f64` range.
const DEEP_ATTENUATION: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A problem found in a train file. `line` and `column` are 1-based, columns
/// count characters.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub offending_token: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {} (at `{}`)",
            self.line, self.column, self.severity, self.message, self.offending_token
        )
    }
}

/// Source range of one statement; `end_column` is exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
    pub end_column: usize,
}

/// Parsed train file. Equality ignores the spans.
#[derive(Debug, Clone, Default)]
pub struct TrainDocument {
    pub beams: Vec<BeamSpec>,
    pub elements: Vec<FilterElement>,
    pub beam_spans: Vec<Span>,
    pub element_spans: Vec<Span>,
}

impl PartialEq for TrainDocument {
    fn eq(&self, other: &Self) -> bool {
        self.beams == other.beams && self.elements == other.elements
    }
}

impl TrainDocument {
    pub fn new(beams: Vec<BeamSpec>, elements: Vec<FilterElement>) -> Self {
        TrainDocument {
            beams,
            elements,
            ..TrainDocument::default()
        }
    }
}

/// Everything that parsed, plus diagnostics for everything that did not.
#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub document: TrainDocument,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl ParseOutcome {
    pub fn errors(&self) -> impl Iterator<Item = &ParseDiagnostic> {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    /// The document if no errors were reported, otherwise all diagnostics.
    pub fn into_result(self) -> Result<TrainDocument, Vec<ParseDiagnostic>> {
        if self.has_errors() {
            Err(self.diagnostics)
        } else {
            Ok(self.document)
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

impl Token<'_> {
    fn end_column(&self) -> usize {
        self.column + self.text.chars().count()
    }
}

enum Item {
    Beam(BeamSpec),
    Element(FilterElement),
}

struct Failure {
    column: usize,
    token: String,
    message: String,
}

impl Failure {
    fn at(token: &Token<'_>, message: impl Into<String>) -> Failure {
        Failure {
            column: token.column,
            token: token.text.to_owned(),
            message: message.into(),
        }
    }
}

/// Parses a train file. Each bad line produces exactly one error and parsing
/// continues with the next line.
pub fn parse_train(source: &[u8]) -> ParseOutcome {
    let mut out = ParseOutcome::default();
    for (index, raw) in source.split(|&b| b == b'\n').enumerate() {
        let line_no = index + 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let text = match std::str::from_utf8(raw) {
            Ok(text) => text,
            Err(e) => {
                let valid = std::str::from_utf8(&raw[..e.valid_up_to()]).unwrap_or_default();
                let bad_len = e.error_len().unwrap_or(raw.len() - e.valid_up_to());
                let bad = &raw[e.valid_up_to()..e.valid_up_to() + bad_len];
                out.diagnostics.push(ParseDiagnostic {
                    severity: Severity::Error,
                    line: line_no,
                    column: valid.chars().count() + 1,
                    message: "invalid UTF-8".to_owned(),
                    offending_token: bad.iter().map(|b| format!("\\x{b:02x}")).collect(),
                });
                continue;
            }
        };
        let code = text.split('#').next().unwrap_or_default();
        let tokens = tokenize(code);
        let Some(head) = tokens.first() else { continue };
        let span = Span {
            line: line_no,
            column: head.column,
            end_column: tokens.last().map_or(head.column, Token::end_column),
        };
        match parse_statement(&tokens) {
            Ok(Item::Beam(b)) => {
                out.document.beams.push(b);
                out.document.beam_spans.push(span);
            }
            Ok(Item::Element(e)) => {
                if let FilterElement::Attenuator { eta1, eta2 } = e {
                    if eta1.max(eta2) > DEEP_ATTENUATION {
                        out.diagnostics.push(ParseDiagnostic {
                            severity: Severity::Warning,
                            line: line_no,
                            column: head.column,
                            message: "attenuation this strong may extinguish the beam".to_owned(),
                            offending_token: head.text.to_owned(),
                        });
                    }
                }
                out.document.elements.push(e);
                out.document.element_spans.push(span);
            }
            Err(f) => out.diagnostics.push(ParseDiagnostic {
                severity: Severity::Error,
                line: line_no,
                column: f.column,
                message: f.message,
                offending_token: f.token,
            }),
        }
    }
    out
}

fn tokenize(code: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in code.char_indices() {
        column += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                tokens.push(Token {
                    text: &code[b..byte],
                    column: c,
                });
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &code[b..],
            column: c,
        });
    }
    tokens
}

fn keys_of(statement: &str) -> Option<&'static [&'static str]> {
    Some(match statement {
        "angles" => &["theta", "phi", "chi", "amp"],
        "stokes" => &["s0", "s1", "s2", "s3"],
        "jones" => &["a1", "a2", "phi1", "phi2"],
        "shifter" | "gyro" => &["d1", "d2"],
        "rotate" => &["alpha"],
        "qwp" | "hwp" => &["axis"],
        "atten" => &["e1", "e2"],
        _ => return None,
    })
}

fn parse_statement(tokens: &[Token<'_>]) -> Result<Item, Failure> {
    let head = &tokens[0];
    let (form, args) = if head.text == "beam" {
        let form = tokens.get(1).ok_or_else(|| {
            Failure::at(head, "expected a beam form: `angles`, `stokes` or `jones`")
        })?;
        if !matches!(form.text, "angles" | "stokes" | "jones") {
            return Err(Failure::at(
                form,
                format!("unknown beam form `{}`", form.text),
            ));
        }
        (form, &tokens[2..])
    } else {
        (head, &tokens[1..])
    };
    let keys = keys_of(form.text)
        .ok_or_else(|| Failure::at(head, format!("unknown statement `{}`", head.text)))?;

    let mut values: Vec<Option<(f64, Token<'_>)>> = vec![None; keys.len()];
    for tok in args {
        let (key, raw) = tok
            .text
            .split_once('=')
            .ok_or_else(|| Failure::at(tok, "expected `key=value`"))?;
        let slot = keys
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| Failure::at(tok, format!("unknown key `{key}` for `{}`", form.text)))?;
        if values[slot].is_some() {
            return Err(Failure::at(tok, format!("duplicate key `{key}`")));
        }
        let value = parse_number(raw).map_err(|msg| Failure::at(tok, msg))?;
        values[slot] = Some((value, *tok));
    }
    let mut v = [0.0; 4];
    for (i, slot) in values.iter().enumerate() {
        v[i] = slot
            .as_ref()
            .ok_or_else(|| Failure::at(form, format!("missing key `{}`", keys[i])))?
            .0;
    }
    let token_for = |key: &str| -> Token<'_> {
        keys.iter()
            .position(|k| *k == key)
            .and_then(|i| values[i].map(|(_, t)| t))
            .unwrap_or(*form)
    };

    if head.text == "beam" {
        let spec = match form.text {
            "angles" => BeamSpec::Angles(AnglesSpec {
                theta: v[0],
                phi: v[1],
                chi: v[2],
                amp: v[3],
            }),
            "stokes" => BeamSpec::Stokes(v),
            _ => BeamSpec::Jones(JonesSpec {
                a1: v[0],
                a2: v[1],
                phi1: v[2],
                phi2: v[3],
            }),
        };
        spec.resolve().map_err(|e| {
            let key = match e {
                PolError::AngleOutOfRange { name, .. } | PolError::NonFinite(name) => name,
                PolError::NonPositiveAmplitude(_) if form.text == "angles" => "amp",
                PolError::NonPositiveAmplitude(_) if v[0] < 0.0 => "a1",
                PolError::NonPositiveAmplitude(_) => "a2",
                PolError::InvalidStokes(_) if v[0] < 0.0 => "s0",
                PolError::ZeroFlux => "s0",
                _ => "",
            };
            Failure::at(&token_for(key), e.to_string())
        })?;
        return Ok(Item::Beam(spec));
    }

    let element = match form.text {
        "shifter" => FilterElement::PhaseShifter {
            delta1: v[0],
            delta2: v[1],
        },
        "gyro" => FilterElement::Gyrotropic {
            delta1: v[0],
            delta2: v[1],
        },
        "rotate" => FilterElement::Rotator { alpha: v[0] },
        "qwp" => FilterElement::QuarterWave { axis_angle: v[0] },
        "hwp" => FilterElement::HalfWave { axis_angle: v[0] },
        _ => FilterElement::Attenuator {
            eta1: v[0],
            eta2: v[1],
        },
    };
    element.validate().map_err(|e| {
        let key = match e {
            PolError::NegativeAttenuation { name: "eta1", .. } => "e1",
            PolError::NegativeAttenuation { .. } => "e2",
            _ => "",
        };
        Failure::at(&token_for(key), e.to_string())
    })?;
    Ok(Item::Element(element))
}

fn parse_number(raw: &str) -> Result<f64, String> {
    let (literal, degrees) = match raw.strip_prefix("deg(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => (inner, true),
        None => (raw, false),
    };
    let value: f64 = literal
        .parse()
        .map_err(|_| format!("invalid number `{literal}`"))?;
    if !value.is_finite() {
        return Err(format!("non-finite number `{literal}`"));
    }
    Ok(if degrees { value * (PI / 180.0) } else { value })
}

/// Canonical text: beams first, then elements, keys in grammar order,
/// shortest round-trip floats, LF line endings.
pub fn serialize_train(doc: &TrainDocument) -> String {
    let mut out = String::new();
    for beam in &doc.beams {
        let (form, values) = match *beam {
            BeamSpec::Angles(a) => ("angles", [a.theta, a.phi, a.chi, a.amp]),
            BeamSpec::Stokes(s) => ("stokes", s),
            BeamSpec::Jones(j) => ("jones", [j.a1, j.a2, j.phi1, j.phi2]),
        };
        out.push_str("beam ");
        write_statement(&mut out, form, &values);
    }
    for e in &doc.elements {
        let values: &[f64] = match e {
            FilterElement::PhaseShifter { delta1, delta2 }
            | FilterElement::Gyrotropic { delta1, delta2 } => &[*delta1, *delta2],
            FilterElement::Rotator { alpha } => &[*alpha],
            FilterElement::QuarterWave { axis_angle } | FilterElement::HalfWave { axis_angle } => {
                &[*axis_angle]
            }
            FilterElement::Attenuator { eta1, eta2 } => &[*eta1, *eta2],
        };
        write_statement(&mut out, e.keyword(), values);
    }
    out
}

fn write_statement(out: &mut String, statement: &str, values: &[f64]) {
    out.push_str(statement);
    let keys = keys_of(statement).expect("serializer only emits known statements");
    for (key, value) in keys.iter().zip(values) {
        out.push(' ');
        out.push_str(key);
        out.push('=');
        out.push_str(&fmt_f64(*value));
    }
    out.push('\n');
}
