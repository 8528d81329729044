//! Report assembly and rendering.
//!
//! A report is the command echo, a sequence of check and record lines, and a
//! trailing summary. Rendering is deterministic byte for byte: line order is
//! fixed by the command, and no line carries timestamps or addresses.

use quasilat::lattice::{Elem, Lattice};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Human,
    Records,
}

/// One line of a report.
pub enum Line {
    Check {
        name: String,
        pass: bool,
        witness: Option<String>,
    },
    Record {
        human: String,
        machine: String,
    },
}

pub struct Report {
    command: String,
    lines: Vec<Line>,
}

/// Render a witness tuple as element tokens in input order.
pub fn witness_tokens(lat: &Lattice, witness: &[Elem]) -> String {
    let toks: Vec<&str> = witness.iter().map(|&e| lat.token(e)).collect();
    format!("({})", toks.join(","))
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), lines: Vec::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) {
        self.lines.push(Line::Check { name: name.into(), pass, witness });
    }

    pub fn verdict(&mut self, name: impl Into<String>, v: &quasilat::Verdict, lat: &Lattice) {
        let witness = v.witness.as_ref().map(|w| witness_tokens(lat, w));
        self.check(name, v.holds, witness);
    }

    pub fn record(&mut self, human: impl Into<String>, machine: impl Into<String>) {
        self.lines.push(Line::Record { human: human.into(), machine: machine.into() });
    }

    pub fn counts(&self) -> (usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        for line in &self.lines {
            if let Line::Check { pass: p, .. } = line {
                if *p {
                    pass += 1;
                } else {
                    fail += 1;
                }
            }
        }
        (pass, fail)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.counts().1 == 0 {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format, quiet: bool) -> String {
        if quiet {
            return String::new();
        }
        let mut out = String::new();
        match format {
            Format::Human => out.push_str(&format!("command: {}\n", self.command)),
            Format::Records => {
                out.push_str(&format!("command={}\n", self.command.replace(' ', ",")))
            }
        }
        let name_width = self
            .lines
            .iter()
            .filter_map(|l| match l {
                Line::Check { name, .. } => Some(name.len()),
                Line::Record { .. } => None,
            })
            .max()
            .unwrap_or(0);
        for line in &self.lines {
            match line {
                Line::Check { name, pass, witness } => {
                    let verdict = if *pass { "PASS" } else { "FAIL" };
                    match format {
                        Format::Human => match witness {
                            Some(w) => out.push_str(&format!(
                                "{verdict} {name:<name_width$} witness={w}\n"
                            )),
                            None => out.push_str(&format!("{verdict} {name}\n")),
                        },
                        Format::Records => {
                            let verdict = if *pass { "pass" } else { "fail" };
                            match witness {
                                Some(w) => out.push_str(&format!(
                                    "check={name} verdict={verdict} witness={w}\n"
                                )),
                                None => {
                                    out.push_str(&format!("check={name} verdict={verdict}\n"))
                                }
                            }
                        }
                    }
                }
                Line::Record { human, machine } => match format {
                    Format::Human => out.push_str(&format!("{human}\n")),
                    Format::Records => out.push_str(&format!("{machine}\n")),
                },
            }
        }
        let (pass, fail) = self.counts();
        out.push_str(&format!("summary pass={pass} fail={fail}\n"));
        out
    }
}
