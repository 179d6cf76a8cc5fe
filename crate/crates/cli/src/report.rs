use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Tsv,
    JsonLines,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, String> {
        match s {
            "human" => Ok(Format::Human),
            "tsv" => Ok(Format::Tsv),
            "json-lines" => Ok(Format::JsonLines),
            other => Err(format!("unknown format `{other}` (human|tsv|json-lines)")),
        }
    }
}

pub struct Line {
    pub id: String,
    pub verdict: &'static str,
    pub height_ub: Option<u32>,
    pub elapsed: Duration,
}

/// One line per goal; ordering follows input order regardless of how the
/// work was scheduled.
pub fn emit(lines: &[Line], format: Format) {
    for l in lines {
        let millis = l.elapsed.as_secs_f64() * 1e3;
        match format {
            Format::Human => {
                let h = l
                    .height_ub
                    .map(|h| format!(" height_ub={h}"))
                    .unwrap_or_default();
                println!("{}: {}{h} ({millis:.1} ms)", l.id, l.verdict);
            }
            Format::Tsv => {
                let h = l.height_ub.map(|h| h.to_string()).unwrap_or_else(|| "-".into());
                println!("{}\t{}\t{}\t{millis:.1}", l.id, l.verdict, h);
            }
            Format::JsonLines => {
                let mut obj = serde_json::Map::new();
                obj.insert("id".into(), l.id.clone().into());
                obj.insert("verdict".into(), l.verdict.into());
                obj.insert(
                    "height_ub".into(),
                    l.height_ub.map(serde_json::Value::from).unwrap_or(serde_json::Value::Null),
                );
                obj.insert("millis".into(), serde_json::json!(millis));
                println!("{}", serde_json::Value::Object(obj));
            }
        }
    }
}
