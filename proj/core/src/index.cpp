#include "tuxqa/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "index_codec.hpp"
#include "io_util.hpp"
#include "tuxqa/errors.hpp"

namespace tuxqa {

using nlohmann::json;

namespace {

constexpr std::array<Field, 2> kFields{Field::Title, Field::Body};

bool better(const ScoredDoc& a, const ScoredDoc& b) {
  if (a.tfidf_score != b.tfidf_score) return a.tfidf_score > b.tfidf_score;
  return a.question_id < b.question_id;
}

template <typename Entries>
void normalize(Entries& entries) {
  double sum = 0.0;
  for (const auto& e : entries) sum += e.second * e.second;
  if (sum <= 0.0) {
    entries.clear();
    return;
  }
  const double norm = std::sqrt(sum);
  for (auto& e : entries) e.second /= norm;
}

}  // namespace

std::string_view to_string(Field field) noexcept {
  return field == Field::Title ? "title" : "body";
}

void FieldWeights::validate() const {
  if (!(title >= 0.0) || !(body >= 0.0)) throw DomainError("field weights must be non-negative");
  if (std::abs(title + body - 1.0) > 1e-9) throw DomainError("field weights must sum to 1");
}

std::uint32_t TfIdfIndex::df(Field f, std::string_view term) const {
  const auto& data = field(f);
  auto it = data.term_ids.find(std::string(term));
  return it == data.term_ids.end() ? 0 : data.df[it->second];
}

std::size_t TfIdfIndex::vocabulary_size(Field f) const noexcept { return field(f).terms.size(); }

SparseVector TfIdfIndex::to_sparse(const FieldData& data, const std::vector<Entry>& entries) const {
  SparseVector out;
  out.reserve(entries.size());
  for (const auto& [tid, w] : entries) out.push_back({data.terms[tid], w});
  std::sort(out.begin(), out.end(), [](const TermWeight& a, const TermWeight& b) { return a.term < b.term; });
  return out;
}

SparseVector TfIdfIndex::doc_vector(Field f, PostId id) const {
  auto it = slots_.find(id);
  if (it == slots_.end()) throw UnknownQuestion(id);
  const auto& data = field(f);
  return to_sparse(data, data.doc_vectors[it->second]);
}

std::vector<TfIdfIndex::Entry> TfIdfIndex::query_entries(const FieldData& data,
                                                         std::span<const std::string> keywords) const {
  std::map<std::uint32_t, std::uint32_t> tf;
  for (const auto& kw : keywords) {
    if (auto it = data.term_ids.find(kw); it != data.term_ids.end()) ++tf[it->second];
  }
  std::vector<Entry> entries;
  const auto n = static_cast<double>(n_docs());
  for (const auto& [tid, count] : tf) {
    const double w = count * std::log(n / data.df[tid]);
    if (w > 0.0) entries.emplace_back(tid, w);
  }
  normalize(entries);
  return entries;
}

SparseVector TfIdfIndex::query_vector(Field f, std::span<const std::string> keywords) const {
  const auto& data = field(f);
  return to_sparse(data, query_entries(data, keywords));
}

std::vector<ScoredDoc> TfIdfIndex::score(std::span<const std::string> keywords) const {
  return score(keywords, weights_);
}

std::vector<ScoredDoc> TfIdfIndex::score(std::span<const std::string> keywords,
                                         const FieldWeights& weights) const {
  weights.validate();
  std::vector<double> total(n_docs(), 0.0);
  std::vector<double> cosine(n_docs(), 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<bool> seen(n_docs(), false);

  for (auto f : kFields) {
    const auto& data = field(f);
    const auto query = query_entries(data, keywords);
    if (query.empty()) continue;
    std::fill(cosine.begin(), cosine.end(), 0.0);
    for (const auto& [tid, qw] : query) {
      for (const auto& p : data.postings[tid]) {
        cosine[p.slot] += qw * p.weight;
        if (!seen[p.slot]) {
          seen[p.slot] = true;
          touched.push_back(p.slot);
        }
      }
    }
    const double w = weights[f];
    for (auto slot : touched) total[slot] += w * std::clamp(cosine[slot], 0.0, 1.0);
  }

  std::vector<ScoredDoc> out;
  out.reserve(touched.size());
  for (auto slot : touched) {
    const double s = std::clamp(total[slot], 0.0, 1.0);
    if (s > 0.0) out.push_back({doc_ids_[slot], s});
  }
  std::sort(out.begin(), out.end(), better);
  return out;
}

void TfIdfIndex::rebuild_postings() {
  slots_.clear();
  for (std::uint32_t slot = 0; slot < doc_ids_.size(); ++slot) slots_.emplace(doc_ids_[slot], slot);
  for (auto& data : fields_) {
    data.term_ids.clear();
    for (std::uint32_t tid = 0; tid < data.terms.size(); ++tid) data.term_ids.emplace(data.terms[tid], tid);
    data.postings.assign(data.terms.size(), {});
    for (std::uint32_t slot = 0; slot < data.doc_vectors.size(); ++slot) {
      for (const auto& [tid, w] : data.doc_vectors[slot]) data.postings[tid].push_back({slot, w});
    }
  }
}

TfIdfIndex build_index(const Corpus& corpus, const Analyzer& analyzer, const FieldWeights& weights) {
  weights.validate();
  if (corpus.question_count() == 0) throw EmptyCorpus();

  TfIdfIndex index;
  index.weights_ = weights;
  index.doc_ids_.assign(corpus.question_ids().begin(), corpus.question_ids().end());
  const auto n = index.doc_ids_.size();

  // Raw term counts per field and document.
  std::array<std::vector<std::map<std::uint32_t, std::uint32_t>>, 2> counts;
  for (auto& c : counts) c.resize(n);

  for (std::size_t slot = 0; slot < n; ++slot) {
    const auto& q = corpus.question(index.doc_ids_[slot]);
    const std::array<std::vector<std::string>, 2> keywords{
        analyzer.keywords(q.title), analyzer.keywords(strip_markup(q.body))};
    for (auto f : kFields) {
      auto& data = index.fields_[static_cast<std::size_t>(f)];
      auto& doc_counts = counts[static_cast<std::size_t>(f)][slot];
      for (const auto& term : keywords[static_cast<std::size_t>(f)]) {
        auto [it, inserted] = data.term_ids.try_emplace(term, static_cast<std::uint32_t>(data.terms.size()));
        if (inserted) {
          data.terms.push_back(term);
          data.df.push_back(0);
        }
        if (doc_counts[it->second]++ == 0) ++data.df[it->second];
      }
    }
  }

  const double nd = static_cast<double>(n);
  for (auto f : kFields) {
    auto& data = index.fields_[static_cast<std::size_t>(f)];
    data.doc_vectors.resize(n);
    for (std::size_t slot = 0; slot < n; ++slot) {
      auto& vec = data.doc_vectors[slot];
      for (const auto& [tid, tf] : counts[static_cast<std::size_t>(f)][slot]) {
        const double w = tf * std::log(nd / data.df[tid]);
        if (w > 0.0) vec.emplace_back(tid, w);
      }
      normalize(vec);
    }
  }
  index.rebuild_postings();
  return index;
}

std::vector<ScoredDoc> top_k(std::span<const ScoredDoc> scored, std::size_t k) {
  if (k == 0) throw DomainError("k must be positive");
  const auto n = std::min(k, scored.size());
  return {scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n)};
}

namespace detail {

void check_format_version(const json& j) {
  auto it = j.find("format_version");
  if (it == j.end() || !it->is_number_integer()) throw ParseError(0, "missing format_version");
  const int found = it->get<int>();
  if (found != kIndexFormatVersion) throw FormatVersionMismatch(kIndexFormatVersion, found);
}

json IndexCodec::to_json(const TfIdfIndex& index) {
  json j;
  j["format_version"] = kIndexFormatVersion;
  j["weights"] = {{"title", index.weights_.title}, {"body", index.weights_.body}};
  j["doc_ids"] = index.doc_ids_;
  json fields = json::object();
  for (auto f : kFields) {
    const auto& data = index.field(f);
    json vectors = json::array();
    for (const auto& vec : data.doc_vectors) {
      json v = json::array();
      for (const auto& [tid, w] : vec) v.push_back({tid, w});
      vectors.push_back(std::move(v));
    }
    fields[std::string(to_string(f))] = {{"terms", data.terms}, {"df", data.df}, {"vectors", std::move(vectors)}};
  }
  j["fields"] = std::move(fields);
  return j;
}

TfIdfIndex IndexCodec::from_json(const json& j) {
  check_format_version(j);
  TfIdfIndex index;
  try {
    index.weights_.title = j.at("weights").at("title").get<double>();
    index.weights_.body = j.at("weights").at("body").get<double>();
    index.weights_.validate();
    index.doc_ids_ = j.at("doc_ids").get<std::vector<PostId>>();
    const auto n = index.doc_ids_.size();
    for (auto f : kFields) {
      const auto& fj = j.at("fields").at(std::string(to_string(f)));
      auto& data = index.fields_[static_cast<std::size_t>(f)];
      data.terms = fj.at("terms").get<std::vector<std::string>>();
      data.df = fj.at("df").get<std::vector<std::uint32_t>>();
      if (data.df.size() != data.terms.size()) throw ParseError(0, "df/terms length mismatch");
      for (auto d : data.df) {
        if (d == 0 || d > n) throw ParseError(0, "document frequency out of range");
      }
      const auto& vectors = fj.at("vectors");
      if (vectors.size() != n) throw ParseError(0, "vector count does not match doc_ids");
      data.doc_vectors.resize(n);
      for (std::size_t slot = 0; slot < n; ++slot) {
        for (const auto& e : vectors[slot]) {
          const auto tid = e.at(0).get<std::uint32_t>();
          if (tid >= data.terms.size()) throw ParseError(0, "term id out of range");
          data.doc_vectors[slot].emplace_back(tid, e.at(1).get<double>());
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed index: ") + e.what());
  }
  index.rebuild_postings();
  if (index.slots_.size() != index.doc_ids_.size()) throw ParseError(0, "duplicate doc id in index");
  return index;
}

}  // namespace detail

void save_index(const TfIdfIndex& index, const std::filesystem::path& path) {
  detail::write_file(path, detail::IndexCodec::to_json(index).dump());
}

TfIdfIndex load_index(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(detail::read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  return detail::IndexCodec::from_json(j);
}

}  // namespace tuxqa
