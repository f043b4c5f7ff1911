//! Reader for the small part of CIF needed to rebuild a periodic set: cell
//! parameters, fractional atom sites and symmetry operations. Only the first
//! data block is read; unknown tags are ignored.

use crate::error::IngestError;

/// Cell, sites and symmetry operations of one data block.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalDocument {
    pub block_name: Option<String>,
    /// `(a, b, c)` in Å.
    pub cell_lengths: [f64; 3],
    /// `(α, β, γ)` in degrees.
    pub cell_angles: [f64; 3],
    pub sites: Vec<Site>,
    pub symmetry_ops: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Site {
    pub label: String,
    pub fractional: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    text: String,
    line: usize,
    /// Quoted and text-field values are never tags or keywords.
    quoted: bool,
}

impl Token {
    fn is_tag(&self) -> bool {
        !self.quoted && self.text.starts_with('_')
    }

    fn is_keyword(&self) -> bool {
        if self.quoted {
            return false;
        }
        let lower = self.text.to_ascii_lowercase();
        lower == "loop_"
            || lower.starts_with("data_")
            || lower.starts_with("save_")
            || lower == "global_"
            || lower == "stop_"
    }
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((idx, line)) = lines.next() {
        let line_no = idx + 1;
        if let Some(rest) = line.strip_prefix(';') {
            // Text field runs until a line starting with ';'.
            let mut value = rest.to_string();
            for (_, l) in lines.by_ref() {
                if l.starts_with(';') {
                    break;
                }
                value.push('\n');
                value.push_str(l);
            }
            tokens.push(Token {
                text: value,
                line: line_no,
                quoted: true,
            });
            continue;
        }
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '#' {
                break;
            }
            if c == '\'' || c == '"' {
                // Closing quote must be followed by whitespace or end of line.
                let mut j = i + 1;
                while j < chars.len()
                    && !(chars[j] == c && chars.get(j + 1).is_none_or(|n| n.is_whitespace()))
                {
                    j += 1;
                }
                tokens.push(Token {
                    text: chars[i + 1..j.min(chars.len())].iter().collect(),
                    line: line_no,
                    quoted: true,
                });
                i = j + 1;
                continue;
            }
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            tokens.push(Token {
                text: chars[start..i].iter().collect(),
                line: line_no,
                quoted: false,
            });
        }
    }
    tokens
}

/// Parses a CIF number, dropping a standard uncertainty such as `(5)`.
/// Returns `Ok(None)` for the CIF placeholders `?` and `.`.
pub fn parse_cif_number(text: &str, line: usize) -> Result<Option<f64>, IngestError> {
    let t = text.trim();
    if t == "?" || t == "." {
        return Ok(None);
    }
    let stripped = match t.find('(') {
        Some(open) if t.ends_with(')') => &t[..open],
        Some(_) => return Err(IngestError::parse(line, format!("malformed number {t:?}"))),
        None => t,
    };
    stripped
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(Some)
        .ok_or_else(|| IngestError::parse(line, format!("malformed number {t:?}")))
}

struct Loop {
    tags: Vec<String>,
    rows: Vec<Vec<Token>>,
}

impl Loop {
    fn column(&self, tag: &str) -> Option<usize> {
        self.tags.iter().position(|t| t == tag)
    }
}

const CELL_TAGS: [&str; 6] = [
    "_cell_length_a",
    "_cell_length_b",
    "_cell_length_c",
    "_cell_angle_alpha",
    "_cell_angle_beta",
    "_cell_angle_gamma",
];

const SYMOP_TAGS: [&str; 4] = [
    "_symmetry_equiv_pos_as_xyz",
    "_space_group_symop_operation_xyz",
    "_symmetry_equiv.pos_as_xyz",
    "_space_group_symop.operation_xyz",
];

/// Reads the first data block of a CIF.
pub fn parse_cif(text: &str) -> Result<CrystalDocument, IngestError> {
    let tokens = tokenize(text);
    let mut block_name = None;
    let mut items: Vec<(String, Token)> = Vec::new();
    let mut loops: Vec<Loop> = Vec::new();

    let mut i = 0;
    let mut seen_block = false;
    while i < tokens.len() {
        let tok = &tokens[i];
        let lower = tok.text.to_ascii_lowercase();
        if !tok.quoted && lower.starts_with("data_") {
            if seen_block {
                break;
            }
            seen_block = true;
            block_name = Some(tok.text[5..].to_string());
            i += 1;
        } else if !tok.quoted && lower == "loop_" {
            i += 1;
            let mut tags = Vec::new();
            while i < tokens.len() && tokens[i].is_tag() {
                tags.push(tokens[i].text.to_ascii_lowercase());
                i += 1;
            }
            let mut values = Vec::new();
            while i < tokens.len() && !tokens[i].is_tag() && !tokens[i].is_keyword() {
                values.push(tokens[i].clone());
                i += 1;
            }
            if tags.is_empty() {
                return Err(IngestError::parse(tok.line, "loop_ without tags"));
            }
            if values.len() % tags.len() != 0 {
                return Err(IngestError::parse(
                    tok.line,
                    format!(
                        "loop has {} values for {} tags",
                        values.len(),
                        tags.len()
                    ),
                ));
            }
            let rows = values.chunks(tags.len()).map(<[Token]>::to_vec).collect();
            loops.push(Loop { tags, rows });
        } else if tok.is_tag() {
            let tag = lower;
            match tokens.get(i + 1) {
                Some(v) if !v.is_tag() && !v.is_keyword() => {
                    items.push((tag, v.clone()));
                    i += 2;
                }
                _ => return Err(IngestError::parse(tok.line, format!("tag {tag} has no value"))),
            }
        } else {
            // Stray value or other keyword: ignore.
            i += 1;
        }
    }

    let mut cell = [0.0; 6];
    for (slot, tag) in cell.iter_mut().zip(CELL_TAGS) {
        let (_, tok) = items
            .iter()
            .find(|(t, _)| t == tag)
            .ok_or(IngestError::MissingCell(tag))?;
        *slot = parse_cif_number(&tok.text, tok.line)?.ok_or(IngestError::MissingCell(tag))?;
    }

    let site_loop = loops
        .iter()
        .find(|l| l.column("_atom_site_fract_x").is_some())
        .ok_or(IngestError::MissingSites)?;
    let cols = ["_atom_site_fract_x", "_atom_site_fract_y", "_atom_site_fract_z"]
        .map(|t| site_loop.column(t));
    let [Some(cx), Some(cy), Some(cz)] = cols else {
        return Err(IngestError::MissingSites);
    };
    let label_col = site_loop.column("_atom_site_label");
    let mut sites = Vec::with_capacity(site_loop.rows.len());
    for (k, row) in site_loop.rows.iter().enumerate() {
        let mut frac = [0.0; 3];
        let mut missing = false;
        for (slot, c) in frac.iter_mut().zip([cx, cy, cz]) {
            match parse_cif_number(&row[c].text, row[c].line)? {
                Some(v) => *slot = v,
                None => missing = true,
            }
        }
        if missing {
            continue;
        }
        let label = label_col
            .map(|c| row[c].text.clone())
            .unwrap_or_else(|| format!("site{}", k + 1));
        sites.push(Site {
            label,
            fractional: frac,
        });
    }
    if sites.is_empty() {
        return Err(IngestError::MissingSites);
    }

    let symmetry_ops = loops
        .iter()
        .find_map(|l| SYMOP_TAGS.iter().find_map(|t| l.column(t)).map(|c| (l, c)))
        .map(|(l, c)| l.rows.iter().map(|r| r[c].text.clone()).collect())
        .or_else(|| {
            // A single operation may also be given as a plain item.
            items
                .iter()
                .find(|(t, _)| SYMOP_TAGS.contains(&t.as_str()))
                .map(|(_, v)| vec![v.text.clone()])
        });

    Ok(CrystalDocument {
        block_name,
        cell_lengths: [cell[0], cell[1], cell[2]],
        cell_angles: [cell[3], cell[4], cell[5]],
        sites,
        symmetry_ops,
    })
}
