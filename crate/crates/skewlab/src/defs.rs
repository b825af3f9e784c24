//! Text definition files for rings, endomorphisms, and modules, plus the
//! round-trippable dump format. Every structure is verified as it is
//! loaded; a failure anywhere rejects the whole file with the line it
//! came from.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::catalog::{CatalogEntry, Provenance};
use crate::error::Error;
use crate::finmod::{verify_module_axioms, ModuleTable};
use crate::finring::{verify_endomorphism, verify_ring_axioms, Elem, RingTable};

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), Error> {
        let last = self.items.last().map(|(n, _)| *n).unwrap_or(0);
        self.next().ok_or_else(|| Error::Parse {
            line: last + 1,
            msg: format!("expected {what}, found end of file"),
        })
    }
}

fn parse_row(line: &str, lineno: usize, width: usize, bound: usize) -> Result<Vec<Elem>, Error> {
    let row: Vec<Elem> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("expected an element index, found '{t}'"),
            })
        })
        .collect::<Result<_, _>>()?;
    if row.len() != width {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected {width} indices, found {}", row.len()),
        });
    }
    if let Some(&bad) = row.iter().find(|&&v| v >= bound) {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("index {bad} out of range (size {bound})"),
        });
    }
    Ok(row)
}

fn parse_block(
    lines: &mut Lines,
    keyword: &str,
    rows: usize,
    width: usize,
    bound: usize,
) -> Result<Vec<Vec<Elem>>, Error> {
    let (lineno, line) = lines.expect(&format!("'{keyword}' block"))?;
    if line != keyword {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected '{keyword}', found '{line}'"),
        });
    }
    (0..rows)
        .map(|_| {
            let (n, l) = lines.expect("a table row")?;
            parse_row(l, n, width, bound)
        })
        .collect()
}

/// Wraps a verification failure with the line of the structure's header.
fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line, msg: other.to_string() },
    }
}

/// Parses and verifies a definition file into catalog entries, one per
/// ring, in definition order. Endomorphisms and modules attach to rings
/// already defined in the same file.
pub fn parse_definitions(text: &str) -> Result<Vec<CatalogEntry>, Error> {
    let mut lines = Lines::new(text);
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut ring_lines: BTreeMap<String, usize> = BTreeMap::new();
    let mut item_lines: BTreeMap<String, usize> = BTreeMap::new();
    while let Some((lineno, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["ring", name, size] => {
                let size: usize = size.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("invalid ring size '{size}'"),
                })?;
                if let Some(prev) = ring_lines.get(*name) {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("duplicate ring '{name}' (first defined at line {prev})"),
                    });
                }
                let add = parse_block(&mut lines, "add", size, size, size)?;
                let mul = parse_block(&mut lines, "mul", size, size, size)?;
                let (one_line, one_decl) = lines.expect("'one <index>'")?;
                let one = match one_decl.split_whitespace().collect::<Vec<_>>().as_slice() {
                    ["one", idx] => idx.parse::<usize>().map_err(|_| Error::Parse {
                        line: one_line,
                        msg: format!("invalid one index '{idx}'"),
                    })?,
                    _ => {
                        return Err(Error::Parse {
                            line: one_line,
                            msg: format!("expected 'one <index>', found '{one_decl}'"),
                        })
                    }
                };
                let ring = RingTable::from_tables(name, size, add, mul, one)
                    .map_err(|e| at_line(lineno, e))?;
                verify_ring_axioms(&ring).map_err(|e| at_line(lineno, e))?;
                ring_lines.insert(name.to_string(), lineno);
                entries.push(CatalogEntry {
                    id: name.to_string(),
                    ring: Arc::new(ring),
                    endomorphisms: Vec::new(),
                    modules: Vec::new(),
                    provenance: Provenance::File,
                });
            }
            ["endo", name, ringname] => {
                let entry = entries
                    .iter_mut()
                    .find(|e| e.id == *ringname)
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: format!("unknown ring '{ringname}'"),
                    })?;
                let key = format!("{ringname}/endo/{name}");
                if let Some(prev) = item_lines.get(&key) {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!(
                            "duplicate endomorphism '{name}' on ring '{ringname}' (first defined at line {prev})"
                        ),
                    });
                }
                let (row_line, row) = lines.expect("an endomorphism row")?;
                let map = parse_row(row, row_line, entry.ring.size, entry.ring.size)?;
                let endo = verify_endomorphism(entry.ring.clone(), name, map)
                    .map_err(|e| at_line(lineno, e))?;
                item_lines.insert(key, lineno);
                entry.endomorphisms.push(Arc::new(endo));
            }
            ["module", "regular", "over", ringname] => {
                let entry = entries
                    .iter_mut()
                    .find(|e| e.id == *ringname)
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: format!("unknown ring '{ringname}'"),
                    })?;
                let key = format!("{ringname}/module/regular");
                if let Some(prev) = item_lines.get(&key) {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!(
                            "duplicate module 'regular' over ring '{ringname}' (first defined at line {prev})"
                        ),
                    });
                }
                item_lines.insert(key, lineno);
                entry.modules.push(Arc::new(ModuleTable::regular(entry.ring.clone())));
            }
            ["module", name, "over", ringname, size] => {
                let entry = entries
                    .iter_mut()
                    .find(|e| e.id == *ringname)
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: format!("unknown ring '{ringname}'"),
                    })?;
                let size: usize = size.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("invalid module size '{size}'"),
                })?;
                let key = format!("{ringname}/module/{name}");
                if let Some(prev) = item_lines.get(&key) {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!(
                            "duplicate module '{name}' over ring '{ringname}' (first defined at line {prev})"
                        ),
                    });
                }
                let add = parse_block(&mut lines, "add", size, size, size)?;
                let action = parse_block(&mut lines, "action", size, entry.ring.size, size)?;
                let module = ModuleTable::from_tables(name, entry.ring.clone(), size, add, action)
                    .map_err(|e| at_line(lineno, e))?;
                verify_module_axioms(&module).map_err(|e| at_line(lineno, e))?;
                item_lines.insert(key, lineno);
                entry.modules.push(Arc::new(module));
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected 'ring', 'endo', or 'module' declaration, found '{line}'"),
                });
            }
        }
    }
    Ok(entries)
}

/// Loads a definition file from disk.
pub fn load_definitions(path: &std::path::Path) -> Result<Vec<CatalogEntry>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_definitions(&text)
}

fn dump_table(out: &mut String, keyword: &str, table: &[Vec<Elem>]) {
    out.push_str(keyword);
    out.push('\n');
    for row in table {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Emits a definition file that parses back to an identical entry.
pub fn dump_entry(entry: &CatalogEntry) -> String {
    let mut out = String::new();
    let ring = &entry.ring;
    out.push_str(&format!("ring {} {}\n", ring.name, ring.size));
    dump_table(&mut out, "add", &ring.add);
    dump_table(&mut out, "mul", &ring.mul);
    out.push_str(&format!("one {}\n", ring.one));
    for endo in &entry.endomorphisms {
        out.push_str(&format!("endo {} {}\n", endo.name, ring.name));
        let cells: Vec<String> = endo.map.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    for module in &entry.modules {
        if module.is_regular() && module.name == "regular" {
            out.push_str(&format!("module regular over {}\n", ring.name));
        } else {
            out.push_str(&format!("module {} over {} {}\n", module.name, ring.name, module.size));
            dump_table(&mut out, "add", &module.add);
            dump_table(&mut out, "action", &module.action);
        }
    }
    out
}
