//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/app/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <set>

#include "lcjt/app/ligase_file.h"
#include "lcjt/app/manifest.h"
#include "lcjt/app/svg.h"
#include "lcjt/chem/fingerprint.h"
#include "lcjt/chem/smiles.h"
#include "lcjt/data/compounds.h"
#include "lcjt/data/csv.h"
#include "lcjt/data/pairs.h"
#include "lcjt/data/screening.h"
#include "lcjt/data/summary.h"
#include "lcjt/eval/metrics.h"
#include "lcjt/eval/projection.h"
#include "lcjt/geom/conformer.h"
#include "lcjt/model/trainer.h"

namespace lcjt {
namespace fs = std::filesystem;

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name)
      return static_cast<int>(i);
  }
  return -1;
}

CsvTable parse_csv_table(std::string_view text, const std::vector<std::string> &required) {
  CsvTable t;
  int lineno = 0;
  bool have_header = false;
  for (std::string_view line: split_lines(text)) {
    ++lineno;
    if (trim(line).empty())
      continue;
    std::vector<std::string> f = split_csv_line(line);
    if (!have_header) {
      for (std::string &h: f)
        h = trim(h);
      t.header = std::move(f);
      have_header = true;
      for (const std::string &r: required) {
        if (t.column(r) < 0)
          throw SchemaError("missing column '" + r + "'", lineno);
      }
      continue;
    }
    if (f.size() != t.header.size())
      throw SchemaError("expected " + std::to_string(t.header.size()) + " fields, got "
                        + std::to_string(f.size()), lineno);
    t.rows.push_back(std::move(f));
    t.lines.push_back(lineno);
  }
  if (!have_header)
    throw SchemaError("empty table");
  return t;
}

namespace {

struct Context {
  const RunConfig &cfg;
  fs::path out;
  std::uint64_t seed;
  Manifest manifest;
};

fs::path out_path(const Context &c, const std::string &key, const std::string &rel) {
  return c.cfg.has(key) ? fs::path(c.cfg.get(key)) : c.out / rel;
}

std::string read_input(const fs::path &p) {
  if (!fs::exists(p))
    throw CommandError(kExitError, "input not found: " + p.string());
  return read_text_file(p);
}

IngestResult ingest_file(const fs::path &p) {
  try {
    return ingest_compounds_csv(read_input(p));
  } catch (const SchemaError &e) {
    throw CommandError(kExitSchema, p.string() + ": " + e.what());
  }
}

std::vector<LigaseContext> load_ligases(const Context &c) {
  const fs::path p = c.cfg.require("ligases");
  std::vector<LigaseContext> ligs;
  try {
    ligs = parse_ligase_fasta(read_input(p));
    if (c.cfg.has("ligase_embeddings"))
      attach_embeddings(ligs, parse_embedding_sidecar(read_input(c.cfg.get("ligase_embeddings"))));
  } catch (const ParseError &e) {
    throw CommandError(kExitSchema, e.what());
  }
  return ligs;
}

const LigaseContext *find_ligase(const std::vector<LigaseContext> &ligs, const std::string &id) {
  for (const LigaseContext &l: ligs) {
    if (l.id == id)
      return &l;
  }
  return nullptr;
}

std::string join(const std::vector<std::string> &v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += sep;
    out += v[i];
  }
  return out;
}

void echo_map(const RunConfig &cfg, const std::string &prefix,
              const std::map<std::string, std::string> &m) {
  for (const auto &[k, v]: m)
    cfg.note_effective(prefix + k, v);
}

// --- ingest -----------------------------------------------------------------

int cmd_ingest(Context &c) {
  const IngestResult r = ingest_file(c.cfg.require("compounds"));
  std::map<std::string, std::string> filter_keys;
  for (const auto &[k, v]: c.cfg.section("filter."))
    filter_keys["filter." + k] = v;
  FilterSpec spec;
  try {
    spec = FilterSpec::from_map(filter_keys);
  } catch (const Error &e) {
    throw CommandError(kExitSchema, e.what());
  }
  for (const auto &[k, v]: spec.to_map())
    c.cfg.note_effective(k, v);

  const FilterResult fr = admet_filter(r.records, spec);
  c.manifest.write("passed.csv", compounds_to_csv(fr.passed, r.ligases));

  std::string failed = csv_row({ "line", "id", "reasons" });
  for (const FilterFailure &f: fr.failed)
    failed += csv_row({ std::to_string(f.record.line), f.record.id, join(f.reasons, "; ") });
  c.manifest.write("failed.csv", failed);

  std::string rej = csv_row({ "line", "id", "reason" });
  for (const Rejection &x: r.rejections)
    rej += csv_row({ std::to_string(x.line), x.id, x.reason });
  c.manifest.write("rejections.csv", rej);

  std::vector<PropertySummary> summary;
  if (fr.passed.empty()) {
    for (const char *name: { "MW", "logPo/w", "logS", "logHERG", "#metab", "Rule-Of-Five" })
      summary.push_back(summarize(name, {}));
  } else {
    summary = summarize_properties(fr.passed);
  }
  c.manifest.write("summary.csv", summary_csv(summary));
  c.manifest.write("affinity_counts.csv",
                   affinity_table_csv(affinity_count_table(fr.passed, r.ligases)));

  std::string scaf = csv_row({ "ligase", "class", "rank", "scaffold", "count" });
  std::string scaf_skip = csv_row({ "ligase", "class", "line", "id", "reason" });
  for (const std::string &lig: r.ligases) {
    for (AffinityClass cls: { AffinityClass::kHigh, AffinityClass::kLow, AffinityClass::kNone }) {
      const ScaffoldRanking rank = scaffold_frequency(fr.passed, lig, cls);
      int i = 0;
      for (const ScaffoldCount &s: rank.ranked)
        scaf += csv_row({ lig, std::string(to_string(cls)), std::to_string(++i), s.scaffold,
                          std::to_string(s.count) });
      for (const Rejection &x: rank.unparsed)
        scaf_skip += csv_row({ lig, std::string(to_string(cls)), std::to_string(x.line), x.id,
                               x.reason });
    }
  }
  c.manifest.write("scaffolds.csv", scaf);
  c.manifest.write("scaffold_skipped.csv", scaf_skip);
  c.manifest.note("ingested " + std::to_string(r.records.size()) + ", rejected "
                  + std::to_string(r.rejections.size()) + ", passed "
                  + std::to_string(fr.passed.size()) + ", failed "
                  + std::to_string(fr.failed.size()));
  return kExitOk;
}

// --- train ------------------------------------------------------------------

const char *const kLogColumns[] = { "epoch", "total", "kl", "beta", "wacc", "tacc", "sacc" };

std::vector<std::string> log_fields(int epoch, const LossReport &r) {
  return { std::to_string(epoch), format_number(r.total), format_number(r.kl),
           format_number(r.beta), format_number(r.wacc), format_number(r.tacc),
           format_number(r.sacc) };
}

std::string loss_curve_svg(const std::vector<std::vector<std::string>> &rows) {
  const double w = 640, h = 400, left = 60, right = 20, top = 30, bottom = 50;
  SvgDocument svg(w, h);
  svg.element("text", { { "x", svg_num(w / 2) }, { "y", "18" }, { "text-anchor", "middle" } },
              "Training loss (epoch mean)");
  std::vector<double> ep, tot;
  for (const auto &r: rows) {
    ep.push_back(std::stod(r[0]));
    tot.push_back(std::stod(r[1]));
  }
  double x0 = ep.empty() ? 0 : ep.front(), x1 = ep.empty() ? 1 : ep.back();
  double y0 = tot.empty() ? 0 : *std::min_element(tot.begin(), tot.end());
  double y1 = tot.empty() ? 1 : *std::max_element(tot.begin(), tot.end());
  if (x1 == x0)
    x1 = x0 + 1;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto py = [&](double y) { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); };
  svg.element("line", { { "x1", svg_num(left) }, { "y1", svg_num(h - bottom) },
                        { "x2", svg_num(w - right) }, { "y2", svg_num(h - bottom) },
                        { "stroke", "black" } });
  svg.element("line", { { "x1", svg_num(left) }, { "y1", svg_num(top) }, { "x2", svg_num(left) },
                        { "y2", svg_num(h - bottom) }, { "stroke", "black" } });
  svg.element("text", { { "x", svg_num(w / 2) }, { "y", svg_num(h - 12) },
                        { "text-anchor", "middle" } }, "epoch");
  svg.element("text", { { "x", svg_num(left - 6) }, { "y", svg_num(py(y1)) },
                        { "text-anchor", "end" } }, format_fixed(y1, 3));
  svg.element("text", { { "x", svg_num(left - 6) }, { "y", svg_num(py(y0)) },
                        { "text-anchor", "end" } }, format_fixed(y0, 3));
  std::string pts;
  for (std::size_t i = 0; i < ep.size(); ++i)
    pts += (i ? " " : "") + svg_num(px(ep[i])) + "," + svg_num(py(tot[i]));
  if (!pts.empty())
    svg.element("polyline", { { "points", pts }, { "fill", "none" }, { "stroke", "#1f77b4" } });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SvgAttrs a { { "cx", svg_num(px(ep[i])) }, { "cy", svg_num(py(tot[i])) }, { "r", "2" },
                 { "fill", "#1f77b4" } };
    for (std::size_t k = 0; k < std::size(kLogColumns); ++k)
      a.emplace_back(std::string("data-") + kLogColumns[k], rows[i][k]);
    svg.element("circle", a);
  }
  return svg.str();
}

std::string log_csv(const std::vector<std::vector<std::string>> &rows) {
  std::string out = csv_row(std::vector<std::string>(std::begin(kLogColumns), std::end(kLogColumns)));
  for (const auto &r: rows)
    out += csv_row(r);
  return out;
}

struct PreparedSet {
  std::map<std::string, PreparedMolecule> mols;  // by compound id
  std::string log;
};

int cmd_train(Context &c) {
  const fs::path dataset = out_path(c, "dataset", "passed.csv");
  c.cfg.note_effective("dataset", dataset.string());
  const IngestResult data = ingest_file(dataset);
  const std::vector<LigaseContext> ligases = load_ligases(c);

  PairingPolicy policy;
  policy.include_low = c.cfg.get_bool("pairing.include_low", false);
  policy.ligases = c.cfg.get_list("pairing.ligases");
  for (const std::string &id: policy.ligases) {
    if (!find_ligase(ligases, id))
      throw CommandError(kExitUnknownLigase, "pairing.ligases: unknown ligase '" + id + "'");
  }
  const PairingResult pairs = build_training_pairs(data.records, ligases, policy);

  ModelConfig mc;
  TrainingSchedule sched;
  try {
    mc = ModelConfig::from_map(c.cfg.section("model."));
    sched = TrainingSchedule::from_map(c.cfg.section("train."));
  } catch (const Error &e) {
    throw CommandError(kExitSchema, e.what());
  }

  const fs::path ckpt_path = out_path(c, "checkpoint", "model.ckpt");
  c.cfg.note_effective("checkpoint", ckpt_path.string());
  const bool resume = c.cfg.get_bool("train.resume", false) && fs::exists(ckpt_path);

  std::unique_ptr<Model> model;
  std::optional<Checkpoint> ckpt;
  if (resume) {
    ckpt = load_checkpoint(ckpt_path.string());
    model = model_from_checkpoint(*ckpt);
    mc = model->config();
    c.manifest.note("resumed from epoch " + std::to_string(ckpt->epoch));
  }
  echo_map(c.cfg, "model.", mc.to_map());
  echo_map(c.cfg, "train.", sched.to_map());

  // Optional conformers, matched to compounds by record name.
  std::map<std::string, SdfRecord> conformers;
  if (c.cfg.has("sdf")) {
    try {
      for (SdfRecord &r: parse_sdf_v2000(read_input(c.cfg.get("sdf"))))
        conformers.emplace(r.name, std::move(r));
    } catch (const ParseError &e) {
      throw CommandError(kExitSchema, std::string("sdf: ") + e.what());
    }
  }

  // Unique molecules in first-pair order.
  std::vector<std::string> ids;
  std::map<std::string, std::pair<Molecule, const Conformer *>> source;
  std::string prep_log = csv_row({ "id", "status", "detail" });
  for (const TrainingPair &p: pairs.pairs) {
    if (source.count(p.compound.id))
      continue;
    Molecule mol = p.molecule;
    const Conformer *conf = nullptr;
    auto it = conformers.find(p.compound.id);
    if (it != conformers.end()) {
      if (write_canonical_smiles(it->second.molecule) == write_canonical_smiles(mol)) {
        mol = it->second.molecule;
        conf = &it->second.conformer;
      } else {
        prep_log += csv_row({ p.compound.id, "no_conformer", "SDF record does not match SMILES" });
      }
    }
    ids.push_back(p.compound.id);
    source.emplace(p.compound.id, std::make_pair(std::move(mol), conf));
  }

  Vocabulary vocab;
  if (model) {
    vocab = model->vocab();
  } else {
    std::vector<Molecule> corpus;
    for (const std::string &id: ids)
      corpus.push_back(source.at(id).first);
    vocab = build_vocabulary(corpus);
  }

  std::map<std::string, PreparedMolecule> prepared;
  for (const std::string &id: ids) {
    const auto &[mol, conf] = source.at(id);
    try {
      prepared.emplace(id, prepare_molecule(mol, conf, vocab));
      prep_log += csv_row({ id, "ok", conf ? "torsions from conformer" : "" });
    } catch (const Error &e) {
      prep_log += csv_row({ id, "excluded", e.what() });
    }
  }

  std::map<std::string, PreparedLigase> plig;
  std::vector<TrainingExample> examples;
  for (const TrainingPair &p: pairs.pairs) {
    auto m = prepared.find(p.compound.id);
    if (m == prepared.end())
      continue;
    if (!plig.count(p.ligase.id))
      plig.emplace(p.ligase.id, prepare_ligase(p.ligase, mc));
    examples.push_back({ &m->second, &plig.at(p.ligase.id) });
  }

  std::string excl = csv_row({ "line", "id", "ligase", "reason" });
  for (const PairExclusion &x: pairs.excluded)
    excl += csv_row({ std::to_string(x.line), x.id, x.ligase, x.reason });
  c.manifest.write("train_exclusions.csv", excl);
  c.manifest.write("train_prepared.csv", prep_log);
  c.manifest.write("vocabulary.tsv", vocab.to_tsv());
  if (examples.empty())
    throw CommandError(kExitError, "no training pairs after pairing and preparation");
  c.manifest.note("training pairs " + std::to_string(examples.size()) + ", molecules "
                  + std::to_string(prepared.size()) + ", vocabulary "
                  + std::to_string(vocab.size()));

  if (!model)
    model = std::make_unique<Model>(mc, vocab, c.seed);
  Trainer trainer(*model, sched, c.seed);
  std::vector<std::vector<std::string>> rows;
  const fs::path log_path = c.out / "train_log.csv";
  if (ckpt) {
    trainer.restore(*ckpt);
    if (fs::exists(log_path)) {
      CsvTable old = parse_csv_table(read_text_file(log_path), { "epoch" });
      for (auto &r: old.rows) {
        if (std::stoi(r[0]) <= trainer.epoch())
          rows.push_back(r);
      }
    }
  }

  auto flush_logs = [&] {
    c.manifest.write("train_log.csv", log_csv(rows));
    c.manifest.write("loss_curve.svg", loss_curve_svg(rows));
  };
  while (trainer.epoch() < sched.epochs) {
    LossReport rep;
    try {
      rep = trainer.train_epoch(examples);
    } catch (const NonFiniteLossError &e) {
      flush_logs();
      if (fs::exists(ckpt_path))
        c.manifest.record(fs::relative(ckpt_path, c.out).string());
      c.manifest.note("checkpoint holds the last finite epoch");
      throw CommandError(kExitNonFinite, e.what());
    }
    rows.push_back(log_fields(trainer.epoch(), rep));
    write_text_file(ckpt_path, serialize_checkpoint(trainer.checkpoint()));
  }
  flush_logs();
  if (!fs::exists(ckpt_path))
    write_text_file(ckpt_path, serialize_checkpoint(trainer.checkpoint()));
  c.manifest.record(fs::relative(ckpt_path, c.out).string());

  const LossReport ev = evaluate_teacher_forced(*model, examples, trainer.beta());
  std::string evcsv = csv_row({ "total", "kl", "beta", "wacc", "tacc", "sacc" });
  evcsv += csv_row({ format_number(ev.total), format_number(ev.kl), format_number(ev.beta),
                     format_number(ev.wacc), format_number(ev.tacc), format_number(ev.sacc) });
  c.manifest.write("train_eval.csv", evcsv);
  return kExitOk;
}

// --- generate ---------------------------------------------------------------

int cmd_generate(Context &c) {
  const fs::path ckpt_path = out_path(c, "checkpoint", "model.ckpt");
  c.cfg.note_effective("checkpoint", ckpt_path.string());
  if (!fs::exists(ckpt_path))
    throw CommandError(kExitMissingCheckpoint, "checkpoint not found: " + ckpt_path.string());
  std::unique_ptr<Model> model = model_from_checkpoint(load_checkpoint(ckpt_path.string()));
  const std::vector<LigaseContext> ligases = load_ligases(c);
  std::vector<std::string> ids = c.cfg.get_list("generate.ligases");
  if (ids.empty()) {
    for (const LigaseContext &l: ligases)
      ids.push_back(l.id);
  }
  const long long n = c.cfg.get_int("generate.n", 10);
  if (n < 0)
    throw CommandError(kExitSchema, "generate.n must be >= 0");

  static const char *const kStatuses[] = { "ok", "no_valid_attachment", "kekulize_failed",
                                           "valence_failed" };
  std::string csv = csv_row({ "sample_id", "ligase_id", "smiles", "status" });
  std::string counts = csv_row({ "ligase_id", "status", "count" });
  long long next = 0;
  for (const std::string &id: ids) {
    const LigaseContext *l = find_ligase(ligases, id);
    if (!l)
      throw CommandError(kExitUnknownLigase, "generate.ligases: unknown ligase '" + id + "'");
    const PreparedLigase pl = prepare_ligase(*l, model->config());
    Rng rng(c.seed, "generate/" + id);
    std::map<std::string, int> by_status;
    for (const GeneratedSample &s: model->generate(pl, static_cast<int>(n), rng)) {
      csv += csv_row({ std::to_string(next++), id, s.smiles, s.status });
      ++by_status[s.status];
    }
    for (const char *st: kStatuses)
      counts += csv_row({ id, st, std::to_string(by_status[st]) });
  }
  c.manifest.write("samples.csv", csv);
  c.manifest.write("generation_status.csv", counts);
  return kExitOk;
}

// --- eval -------------------------------------------------------------------

std::string metrics_svg(const std::vector<std::pair<std::string, GenerationReport>> &groups) {
  struct Metric {
    const char *name;
    double value;
  };
  const double bar = 14, gap = 30, left = 50, top = 40, plot_h = 240;
  const double group_w = 5 * bar + gap;
  const double w = left + group_w * static_cast<double>(groups.size()) + 20, h = top + plot_h + 60;
  static const char *const colors[] = { "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd" };
  SvgDocument svg(std::max(w, 320.0), h);
  svg.element("text", { { "x", "10" }, { "y", "18" } },
              "Generation metrics (qed_lite is a simplified QED)");
  svg.element("line", { { "x1", svg_num(left) }, { "y1", svg_num(top + plot_h) },
                        { "x2", svg_num(w - 20) }, { "y2", svg_num(top + plot_h) },
                        { "stroke", "black" } });
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const GenerationReport &r = groups[g].second;
    const Metric ms[] = { { "validity", r.validity.fraction },
                          { "uniqueness", r.uniqueness.fraction },
                          { "novelty", r.novelty.fraction },
                          { "mean_qed_lite", r.mean_qed_lite },
                          { "lipinski_rate", r.lipinski_rate.fraction } };
    const double gx = left + group_w * static_cast<double>(g) + gap / 2;
    for (int k = 0; k < 5; ++k) {
      const double v = std::isnan(ms[k].value) ? 0.0 : ms[k].value;
      const double bh = v * plot_h;
      svg.element("rect", { { "x", svg_num(gx + k * bar) }, { "y", svg_num(top + plot_h - bh) },
                            { "width", svg_num(bar - 2) }, { "height", svg_num(bh) },
                            { "fill", colors[k] }, { "data-group", groups[g].first },
                            { "data-metric", ms[k].name },
                            { "data-value", std::isnan(ms[k].value) ? "undefined"
                                                                    : format_number(ms[k].value) } });
    }
    svg.element("text", { { "x", svg_num(gx + 2.5 * bar) }, { "y", svg_num(top + plot_h + 16) },
                          { "text-anchor", "middle" } }, groups[g].first);
  }
  const char *names[] = { "validity", "uniqueness", "novelty", "mean_qed_lite", "lipinski_rate" };
  for (int k = 0; k < 5; ++k) {
    svg.element("rect", { { "x", svg_num(left + 110.0 * k) }, { "y", svg_num(h - 26) },
                          { "width", "10" }, { "height", "10" }, { "fill", colors[k] } });
    svg.element("text", { { "x", svg_num(left + 110.0 * k + 14) }, { "y", svg_num(h - 17) } },
                names[k]);
  }
  return svg.str();
}

std::string metrics_csv(const std::vector<std::pair<std::string, GenerationReport>> &groups) {
  std::string out = csv_row({ "group", "metric", "value", "numerator", "denominator",
                              "denominator_meaning" });
  for (const auto &[name, r]: groups) {
    auto frac = [&, &name = name](const char *metric, const Fraction &f, const char *meaning) {
      out += csv_row({ name, metric, f.defined() ? format_number(f.fraction) : "undefined",
                       std::to_string(f.numerator), std::to_string(f.denominator), meaning });
    };
    frac("validity", r.validity, "all samples");
    frac("uniqueness", r.uniqueness, "valid samples");
    frac("novelty", r.novelty, "unique valid samples");
    out += csv_row({ name, "mean_qed_lite",
                     std::isnan(r.mean_qed_lite) ? "undefined" : format_number(r.mean_qed_lite),
                     "", std::to_string(r.validity.numerator), "valid samples" });
    frac("lipinski_rate", r.lipinski_rate, "valid samples");
  }
  return out;
}

int cmd_eval(Context &c) {
  const fs::path samples_path = out_path(c, "samples", "samples.csv");
  c.cfg.note_effective("samples", samples_path.string());
  CsvTable samples;
  try {
    samples = parse_csv_table(read_input(samples_path), { "smiles" });
  } catch (const SchemaError &e) {
    if (std::string(e.what()).find("empty table") != std::string::npos)
      throw CommandError(kExitEmptySamples, "sample file is empty: " + samples_path.string());
    throw CommandError(kExitSchema, samples_path.string() + ": " + e.what());
  }
  if (samples.rows.empty())
    throw CommandError(kExitEmptySamples, "sample file has no rows: " + samples_path.string());

  const fs::path dataset = out_path(c, "dataset", "passed.csv");
  c.cfg.note_effective("dataset", dataset.string());
  std::vector<std::string> train_smiles;
  for (const CompoundRecord &r: ingest_file(dataset).records)
    train_smiles.push_back(r.smiles);
  const std::set<std::string> training = canonical_set(train_smiles);

  const int smi_col = samples.column("smiles"), lig_col = samples.column("ligase_id");
  std::vector<std::string> all;
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<std::string>> by_group;
  for (const auto &row: samples.rows) {
    all.push_back(row[smi_col]);
    if (lig_col >= 0) {
      if (!by_group.count(row[lig_col]))
        group_order.push_back(row[lig_col]);
      by_group[row[lig_col]].push_back(row[smi_col]);
    }
  }
  std::vector<std::pair<std::string, GenerationReport>> groups;
  groups.emplace_back("all", evaluate_generation(all, training));
  for (const std::string &g: group_order)
    groups.emplace_back(g, evaluate_generation(by_group[g], training));

  c.manifest.write("generation_report.csv", generation_report_csv(groups.front().second));
  c.manifest.write("eval_metrics.csv", metrics_csv(groups));
  c.manifest.write("eval_metrics.svg", metrics_svg(groups));

  // Chemical-space projection: training compounds vs unique valid samples.
  ProjectionConfig pc;
  pc.method = parse_projection_method(c.cfg.get("eval.projection.method", "tsne"));
  pc.perplexity = c.cfg.get_double("eval.projection.perplexity", 15);
  pc.iterations = static_cast<int>(c.cfg.get_int("eval.projection.iterations", 500));
  pc.seed = c.seed;
  const auto train_max = c.cfg.get_int("eval.projection.training_max", 100);
  const auto gen_max = c.cfg.get_int("eval.projection.generated_max", 100);

  std::vector<std::string> train_pts(training.begin(), training.end());
  Rng pick(c.seed, "eval/projection");
  pick.shuffle(train_pts);
  if (static_cast<long long>(train_pts.size()) > train_max)
    train_pts.resize(static_cast<std::size_t>(train_max));
  std::sort(train_pts.begin(), train_pts.end());
  std::vector<std::string> gen_pts;
  std::set<std::string> seen;
  for (const MoleculeDetail &d: groups.front().second.details) {
    if (d.verdict.valid && seen.insert(d.verdict.canonical).second
        && static_cast<long long>(gen_pts.size()) < gen_max)
      gen_pts.push_back(d.verdict.canonical);
  }
  std::vector<std::pair<std::string, std::string>> pts;  // (series, smiles)
  for (const auto &s: train_pts)
    pts.emplace_back("training", s);
  for (const auto &s: gen_pts)
    pts.emplace_back("generated", s);

  std::string proj = csv_row({ "index", "series", "smiles", "x", "y" });
  const double W = 520, H = 520, pad = 30;
  SvgDocument svg(W, H + 30);
  svg.element("text", { { "x", "10" }, { "y", "18" } },
              "Fingerprint projection (" + std::string(to_string(pc.method)) + ")");
  if (pts.size() < 3) {
    c.manifest.note("projection skipped: fewer than 3 points");
  } else {
    if (pc.method == ProjectionMethod::kTsne) {
      const double bound = (static_cast<double>(pts.size()) - 1) / 3;
      if (!(pc.perplexity < bound)) {
        pc.perplexity = std::nextafter(bound, 0.0);
        c.manifest.note("projection perplexity lowered to " + format_number(pc.perplexity)
                        + " to stay below (n - 1) / 3");
      }
    }
    std::vector<Fingerprint> fps;
    for (const auto &[series, smi]: pts)
      fps.push_back(circular_fingerprint(parse_smiles(smi)));
    const Eigen::MatrixXd y = project_2d(fingerprint_matrix(fps), pc);
    const double xmin = y.col(0).minCoeff(), xmax = y.col(0).maxCoeff();
    const double ymin = y.col(1).minCoeff(), ymax = y.col(1).maxCoeff();
    auto sx = [&](double v) {
      return xmax > xmin ? pad + (v - xmin) / (xmax - xmin) * (W - 2 * pad) : W / 2;
    };
    auto sy = [&](double v) {
      return ymax > ymin ? 30 + H - pad - (v - ymin) / (ymax - ymin) * (H - 2 * pad)
                         : 30 + H / 2;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string xs = format_number(y(static_cast<Eigen::Index>(i), 0));
      const std::string ys = format_number(y(static_cast<Eigen::Index>(i), 1));
      proj += csv_row({ std::to_string(i), pts[i].first, pts[i].second, xs, ys });
      const double cx = sx(y(static_cast<Eigen::Index>(i), 0));
      const double cy = sy(y(static_cast<Eigen::Index>(i), 1));
      SvgAttrs data { { "data-index", std::to_string(i) }, { "data-series", pts[i].first },
                      { "data-smiles", pts[i].second }, { "data-x", xs }, { "data-y", ys } };
      SvgAttrs a;
      if (pts[i].first == "training") {
        a = { { "cx", svg_num(cx) }, { "cy", svg_num(cy) }, { "r", "3.5" },
              { "fill", "#1f77b4" } };
        a.insert(a.end(), data.begin(), data.end());
        svg.element("circle", a);
      } else {
        a = { { "x", svg_num(cx - 3.5) }, { "y", svg_num(cy - 3.5) }, { "width", "7" },
              { "height", "7" }, { "fill", "#ff7f0e" } };
        a.insert(a.end(), data.begin(), data.end());
        svg.element("rect", a);
      }
    }
  }
  c.cfg.note_effective("eval.projection.perplexity_used", format_number(pc.perplexity));
  c.manifest.write("projection.csv", proj);
  c.manifest.write("projection.svg", svg.str());
  return kExitOk;
}

// --- report -----------------------------------------------------------------

int cmd_report(Context &c) {
  const fs::path scores_path = c.cfg.require("scores");
  CsvTable t;
  try {
    t = parse_csv_table(read_input(scores_path), { "compound_id", "ligase", "score" });
  } catch (const SchemaError &e) {
    throw CommandError(kExitSchema, scores_path.string() + ": " + e.what());
  }
  std::vector<std::string> known = c.cfg.get_list("report.ligases");
  if (known.empty() && c.cfg.has("ligases")) {
    for (const LigaseContext &l: load_ligases(c))
      known.push_back(l.id);
  }
  auto check_ligase = [&](const std::string &id, int line) {
    if (!known.empty() && std::find(known.begin(), known.end(), id) == known.end())
      throw CommandError(kExitUnknownLigase, scores_path.string() + " line "
                                                 + std::to_string(line) + ": unknown ligase '"
                                                 + id + "'");
  };

  // Design target per compound: explicit column, else the samples file.
  std::map<std::string, std::string> design_of;
  const int design_col = t.column("design_ligase");
  if (design_col < 0) {
    const fs::path sp = out_path(c, "samples", "samples.csv");
    if (fs::exists(sp)) {
      CsvTable s = parse_csv_table(read_text_file(sp), { "sample_id", "ligase_id" });
      for (const auto &r: s.rows)
        design_of[r[s.column("sample_id")]] = r[s.column("ligase_id")];
    }
  }

  const int cid = t.column("compound_id"), lc = t.column("ligase"), sc = t.column("score");
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> cell;  // (compound, ligase)
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> means;  // (design, docked)
  std::set<std::string> compounds, ligs, designs;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto &r = t.rows[i];
    const std::string comp = trim(r[cid]), lig = trim(r[lc]);
    if (comp.empty())
      throw CommandError(kExitSchema, "line " + std::to_string(t.lines[i]) + ": empty compound_id");
    check_ligase(lig, t.lines[i]);
    std::optional<double> v;
    try {
      v = parse_optional_number(r[sc]);
    } catch (const ParseError &) {
    }
    if (!v)
      throw CommandError(kExitSchema, "line " + std::to_string(t.lines[i])
                                          + ": score is not a number");
    std::string design = design_col >= 0 ? trim(r[design_col]) : "";
    if (design.empty()) {
      auto it = design_of.find(comp);
      design = it == design_of.end() ? "unspecified" : it->second;
    } else {
      check_ligase(design, t.lines[i]);
    }
    compounds.insert(comp);
    ligs.insert(lig);
    designs.insert(design);
    auto &cv = cell[{ comp, lig }];
    cv.first += *v;
    ++cv.second;
    auto &mv = means[{ design, lig }];
    mv.first += *v;
    ++mv.second;
  }
  if (cell.empty())
    throw CommandError(kExitSchema, scores_path.string() + ": no score rows");

  // Column order: configured ligases first, then any others alphabetically.
  std::vector<std::string> cols;
  for (const std::string &k: known) {
    if (ligs.count(k))
      cols.push_back(k);
  }
  for (const std::string &l: ligs) {
    if (std::find(cols.begin(), cols.end(), l) == cols.end())
      cols.push_back(l);
  }
  std::vector<std::string> design_order;
  for (const std::string &k: known) {
    if (designs.count(k))
      design_order.push_back(k);
  }
  for (const std::string &d: designs) {
    if (std::find(design_order.begin(), design_order.end(), d) == design_order.end())
      design_order.push_back(d);
  }

  std::string heat = csv_row({ "compound_id", "ligase", "score" });
  double lo = INFINITY, hi = -INFINITY;
  for (const auto &[key, v]: cell) {
    const double m = v.first / v.second;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const double cw = 70, ch = 18, left = 140, top = 40;
  const double W = left + cw * static_cast<double>(cols.size()) + 150;
  const double H = top + ch * static_cast<double>(compounds.size()) + 40;
  SvgDocument svg(W, H);
  svg.element("text", { { "x", "10" }, { "y", "18" } }, "Docking scores (kcal/mol)");
  for (std::size_t j = 0; j < cols.size(); ++j)
    svg.element("text", { { "x", svg_num(left + cw * (j + 0.5)) }, { "y", svg_num(top - 6) },
                          { "text-anchor", "middle" } }, cols[j]);
  auto color = [&](double v) {
    // Lowest (strongest) score dark blue, highest pale yellow.
    const double f = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    const int r = static_cast<int>(std::lround(33 + f * (255 - 33)));
    const int g = static_cast<int>(std::lround(102 + f * (247 - 102)));
    const int b = static_cast<int>(std::lround(172 + f * (188 - 172)));
    return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
  };
  std::size_t i = 0;
  for (const std::string &comp: compounds) {
    svg.element("text", { { "x", svg_num(left - 6) }, { "y", svg_num(top + ch * (i + 0.7)) },
                          { "text-anchor", "end" } }, comp);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto it = cell.find({ comp, cols[j] });
      if (it == cell.end())
        continue;
      const double m = it->second.first / it->second.second;
      const std::string ms = format_number(m);
      heat += csv_row({ comp, cols[j], ms });
      svg.element("rect", { { "x", svg_num(left + cw * j) }, { "y", svg_num(top + ch * i) },
                            { "width", svg_num(cw) }, { "height", svg_num(ch) },
                            { "fill", color(m) }, { "data-compound", comp },
                            { "data-ligase", cols[j] }, { "data-score", ms } });
    }
    ++i;
  }
  const double lx = left + cw * static_cast<double>(cols.size()) + 20;
  svg.element("rect", { { "x", svg_num(lx) }, { "y", svg_num(top) }, { "width", "14" },
                        { "height", "14" }, { "fill", color(lo) } });
  svg.element("text", { { "x", svg_num(lx + 20) }, { "y", svg_num(top + 11) },
                        { "data-min", format_number(lo) } }, "min " + format_fixed(lo, 2));
  svg.element("rect", { { "x", svg_num(lx) }, { "y", svg_num(top + 20) }, { "width", "14" },
                        { "height", "14" }, { "fill", color(hi) } });
  svg.element("text", { { "x", svg_num(lx + 20) }, { "y", svg_num(top + 31) },
                        { "data-max", format_number(hi) } }, "max " + format_fixed(hi, 2));

  std::string mcsv = csv_row({ "design_ligase", "docked_ligase", "mean_score", "n" });
  for (const std::string &d: design_order) {
    for (const std::string &l: cols) {
      auto it = means.find({ d, l });
      if (it == means.end())
        continue;
      mcsv += csv_row({ d, l, format_fixed(it->second.first / it->second.second, 2),
                        std::to_string(it->second.second) });
    }
  }
  c.manifest.write("heatmap.csv", heat);
  c.manifest.write("heatmap.svg", svg.str());
  c.manifest.write("report_means.csv", mcsv);
  return kExitOk;
}

}  // namespace

CommandResult run_command(const std::string &name, const RunConfig &cfg) {
  CommandResult res;
  std::unique_ptr<Context> ctx;
  try {
    const fs::path out = cfg.get("out", "out");
    const long long seed = cfg.get_int("seed", 0);
    if (seed < 0)
      throw CommandError(kExitSchema, "seed must be non-negative");
    ctx.reset(new Context { cfg, out, static_cast<std::uint64_t>(seed), Manifest(out, name) });
    if (name == "ingest")
      res.exit_code = cmd_ingest(*ctx);
    else if (name == "train")
      res.exit_code = cmd_train(*ctx);
    else if (name == "generate")
      res.exit_code = cmd_generate(*ctx);
    else if (name == "eval")
      res.exit_code = cmd_eval(*ctx);
    else if (name == "report")
      res.exit_code = cmd_report(*ctx);
    else
      throw CommandError(kExitError, "unknown command '" + name + "'");
  } catch (const CommandError &e) {
    res = { e.code(), e.what() };
  } catch (const SchemaError &e) {
    res = { kExitSchema, e.what() };
  } catch (const std::exception &e) {
    res = { kExitError, e.what() };
  }
  if (ctx) {
    try {
      ctx->manifest.finish(res.exit_code, res.message, cfg.effective());
    } catch (const std::exception &e) {
      if (res.exit_code == kExitOk)
        res = { kExitError, std::string("manifest: ") + e.what() };
    }
  }
  return res;
}

}  // namespace lcjt
