#include "toca/metrics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "toca/error.hpp"
#include "toca/kernels.hpp"
#include "toca/template.hpp"

namespace toca {

using json = nlohmann::json;

std::string_view to_string(Granularity g) {
  return g == Granularity::Token ? "token" : "structure";
}

std::map<std::string, uint64_t> atom_counts(
    const std::vector<TaggedSentence>& corpus, Granularity granularity) {
  std::map<std::string, uint64_t> counts;
  for (const TaggedSentence& s : corpus) {
    if (granularity == Granularity::Token) {
      for (const TaggedToken& tok : s.tokens)
        if (tok.pos_class.is_lexical())
          ++counts[LexId{tok.surface, tok.pos_class.slot_class()}.key()];
    } else {
      if (auto tmpl = template_of(s)) ++counts[tmpl->canonical_form()];
    }
  }
  return counts;
}

namespace {

// Exact parallel test for two integer count vectors (Cauchy-Schwarz
// equality): same support and constant cross-ratio against a reference
// atom. When it holds, the cosine is exactly 1 and the double formula must
// not be trusted to land there.
bool parallel_counts(const std::map<std::string, uint64_t>& a,
                     const std::map<std::string, uint64_t>& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  auto ib = b.begin();
  unsigned __int128 ra = 0, rb = 0;  // reference ratio ra:rb
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ra == 0) {
      ra = ia->second;
      rb = ib->second;
      continue;
    }
    if (static_cast<unsigned __int128>(ia->second) * rb !=
        static_cast<unsigned __int128>(ib->second) * ra)
      return false;
  }
  return true;
}

}  // namespace

MetricsRow distribution_stats(const std::vector<TaggedSentence>& d_corpus,
                              const std::vector<TaggedSentence>& t_corpus,
                              Granularity granularity) {
  auto cd = atom_counts(d_corpus, granularity);
  auto ct = atom_counts(t_corpus, granularity);
  if (cd.empty() || ct.empty())
    throw EmptyModelError(std::string("corpus has no atoms at ") +
                          std::string(to_string(granularity)) +
                          " granularity");

  uint64_t shared_atoms = 0;
  uint64_t shared_mass_d = 0, shared_mass_t = 0;
  uint64_t mass_d = 0, mass_t = 0;
  for (const auto& [atom, count] : cd) {
    mass_d += count;
    if (auto it = ct.find(atom); it != ct.end()) {
      ++shared_atoms;
      shared_mass_d += count;
      shared_mass_t += it->second;
    }
  }
  for (const auto& [atom, count] : ct) mass_t += count;

  MetricsRow row;
  row.granularity = granularity;
  row.p = static_cast<double>(shared_atoms) / static_cast<double>(cd.size());
  row.r = static_cast<double>(shared_atoms) / static_cast<double>(ct.size());
  row.pw = static_cast<double>(shared_mass_d) / static_cast<double>(mass_d);
  row.rw = static_cast<double>(shared_mass_t) / static_cast<double>(mass_t);

  if (parallel_counts(cd, ct)) {
    row.cosine = 1.0;
    return row;
  }
  // Dense vectors over the union vocabulary, then dot / sqrt(|d|^2 |t|^2).
  std::vector<double> vd, vt;
  vd.reserve(cd.size() + ct.size());
  vt.reserve(cd.size() + ct.size());
  auto id = cd.begin();
  auto it = ct.begin();
  while (id != cd.end() || it != ct.end()) {
    if (it == ct.end() || (id != cd.end() && id->first < it->first)) {
      vd.push_back(static_cast<double>(id->second));
      vt.push_back(0.0);
      ++id;
    } else if (id == cd.end() || it->first < id->first) {
      vd.push_back(0.0);
      vt.push_back(static_cast<double>(it->second));
      ++it;
    } else {
      vd.push_back(static_cast<double>(id->second));
      vt.push_back(static_cast<double>(it->second));
      ++id;
      ++it;
    }
  }
  size_t n = vd.size();
  double dot = kernels::dot(vd.data(), vt.data(), n);
  double d2 = kernels::dot(vd.data(), vd.data(), n);
  double t2 = kernels::dot(vt.data(), vt.data(), n);
  row.cosine = dot / std::sqrt(d2 * t2);
  return row;
}

BoundReport upper_bound(const CorpusModel& model) {
  if (model.empty())
    throw EmptyModelError("cannot bound an empty model");

  std::array<uint64_t, kSlotClassCount> class_sizes{};
  for (const auto& [id, count] : model.unigrams) {
    (void)count;  // present keys always have count >= 1
    ++class_sizes[static_cast<size_t>(id.cls)];
  }

  constexpr double kExactCap = 1e18;
  BoundReport report;
  report.per_template_terms = model.templates.size();
  long double exact_sum = 0.0L;
  bool exact_ok = true;
  std::vector<double> log10_terms;
  log10_terms.reserve(model.templates.size());

  for (const auto& [canonical, count] : model.templates) {
    (void)count;  // Eq-style bound counts each distinct template once
    auto tmpl = StructureTemplate::parse(canonical);
    if (!tmpl)
      throw CorruptFileError("model contains a malformed template: '" +
                             canonical + "'");
    double log10_term = 0.0;
    long double term = 1.0L;
    for (SlotClass cls : tmpl->slot_classes()) {
      uint64_t k = class_sizes[static_cast<size_t>(cls)];
      if (k == 0) {
        log10_term = -std::numeric_limits<double>::infinity();
        term = 0.0L;
        break;
      }
      log10_term += std::log10(static_cast<double>(k));
      term *= static_cast<long double>(k);
    }
    log10_terms.push_back(log10_term);
    if (exact_ok) {
      exact_sum += term;
      if (exact_sum > static_cast<long double>(kExactCap)) exact_ok = false;
    }
  }

  // log10 of the sum, accumulated against the largest term for stability.
  double peak = kernels::max_value(log10_terms.data(), log10_terms.size());
  if (peak == -std::numeric_limits<double>::infinity()) {
    report.log10_bound = peak;
    report.exact_bound = 0;
    return report;
  }
  double scaled = 0.0;
  for (double t : log10_terms)
    if (t != -std::numeric_limits<double>::infinity())
      scaled += std::pow(10.0, t - peak);
  report.log10_bound = peak + std::log10(scaled);
  if (exact_ok)
    report.exact_bound = static_cast<uint64_t>(exact_sum + 0.5L);
  return report;
}

namespace {

double pct(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

json row_json(const MetricsRow& row) {
  return json{{"p", row.p},
              {"r", row.r},
              {"p_w", row.pw},
              {"r_w", row.rw},
              {"cosine", row.cosine},
              {"percent",
               json{{"p", pct(row.p)},
                    {"r", pct(row.r)},
                    {"p_w", pct(row.pw)},
                    {"r_w", pct(row.rw)},
                    {"cosine", pct(row.cosine)}}}};
}

}  // namespace

json metrics_report(const MetricsRow& token_row, const MetricsRow& structure_row,
                    const std::optional<BoundReport>& bound) {
  json doc;
  doc["token"] = row_json(token_row);
  doc["structure"] = row_json(structure_row);
  if (bound) {
    doc["bound"] = json{{"log10_bound", bound->log10_bound},
                        {"per_template_terms", bound->per_template_terms}};
    if (bound->exact_bound)
      doc["bound"]["exact_bound"] = *bound->exact_bound;
    else
      doc["bound"]["exact_bound"] = nullptr;
  }
  return doc;
}

std::string metrics_table(const MetricsRow& token_row,
                          const MetricsRow& structure_row) {
  char buf[256];
  std::string out = "            P      R      P_w    R_w    Cosine\n";
  for (const MetricsRow* row : {&token_row, &structure_row}) {
    std::snprintf(buf, sizeof(buf), "%-10s %6.1f %6.1f %6.1f %6.1f %6.1f\n",
                  std::string(to_string(row->granularity)).c_str(),
                  pct(row->p), pct(row->r), pct(row->pw), pct(row->rw),
                  pct(row->cosine));
    out += buf;
  }
  return out;
}

}  // namespace toca
