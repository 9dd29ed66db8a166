#include "eraser/io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "eraser/error.hpp"

namespace eraser::io {
namespace {

constexpr std::array<std::string_view, 5> kKindNames = {"instance_public", "instance_private", "transcript", "key",
                                                       "stats"};

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::Format, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<T>();
}

template <class T>
T integer_member(const Json& j, const char* key) {
  return integer<T>(member(j, key), key);
}

const Json& array_member(const Json& j, const char* key) {
  const Json& a = member(j, key);
  if (!a.is_array()) bad(std::string("'") + key + "' must be an array");
  return a;
}

void append_word(Json& out, const BraidWord& w) {
  const auto& node = w.node();
  switch (node.kind) {
    case BraidWord::Node::Kind::Flat:
      for (auto l : node.letters) out.push_back(static_cast<int>(l));
      break;
    case BraidWord::Node::Kind::Concat:
      for (const auto& p : node.parts) append_word(out, p);
      break;
    case BraidWord::Node::Kind::Repeat:
      out.push_back(Json{{"body", word_to_json(node.parts[0])}, {"count", node.count}});
      break;
  }
}

std::vector<BraidWord> words_from(const Json& a) {
  std::vector<BraidWord> out;
  for (const auto& w : a) out.push_back(word_from_json(w));
  return out;
}

Json words_to(const std::vector<BraidWord>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(word_to_json(w));
  return a;
}

Json matrices_to(const std::vector<Matrix>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(matrix_to_json(m));
  return a;
}

std::vector<Matrix> matrices_from(const Json& a, const FieldPtr& field) {
  std::vector<Matrix> out;
  for (const auto& m : a) out.push_back(matrix_from_json(m, field));
  return out;
}

template <class F>
auto wrap(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::Format) throw;
    bad(e.what());
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

std::string_view kind_name(Kind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

Kind kind_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kKindNames.size(); ++k)
    if (kKindNames[k] == name) return static_cast<Kind>(k);
  bad("unknown envelope kind '" + std::string(name) + "'");
}

Json field_to_json(const Field& f) { return {{"degree", f.degree()}, {"modulus", f.modulus()}}; }

FieldPtr field_from_json(const Json& j) {
  return wrap([&] {
    return make_field(integer_member<unsigned>(j, "degree"), integer_member<std::uint32_t>(j, "modulus"));
  });
}

Json matrix_to_json(const Matrix& m) {
  return {{"n", m.n()}, {"entries", std::vector<Elem>(m.entries().begin(), m.entries().end())}};
}

Matrix matrix_from_json(const Json& j, const FieldPtr& field) {
  return wrap([&] {
    const auto n = integer_member<std::size_t>(j, "n");
    std::vector<Elem> entries;
    for (const auto& e : array_member(j, "entries")) entries.push_back(integer<Elem>(e, "matrix entry"));
    return Matrix::from_entries(field, n, std::move(entries));
  });
}

Json perm_to_json(const Permutation& p) { return p.one_based(); }

Permutation perm_from_json(const Json& j) {
  return wrap([&] {
    if (!j.is_array()) bad("permutation must be an array");
    std::vector<int> images;
    for (const auto& e : j) images.push_back(integer<int>(e, "permutation image"));
    return Permutation::from_one_based(images);
  });
}

Json word_to_json(const BraidWord& w) {
  Json out = Json::array();
  append_word(out, w);
  return out;
}

BraidWord word_from_json(const Json& j) {
  return wrap([&] {
    if (!j.is_array()) bad("braid word must be an array");
    std::vector<BraidWord> parts;
    std::vector<BraidWord::Letter> run;
    auto flush = [&] {
      if (!run.empty()) parts.emplace_back(std::move(run));
      run.clear();
    };
    for (const auto& item : j) {
      if (item.is_number_integer()) {
        const int l = item.get<int>();
        if (l == 0 || l > 0x7fff || l < -0x7fff) bad("braid letter out of range");
        run.push_back(static_cast<BraidWord::Letter>(l));
      } else if (item.is_object()) {
        flush();
        parts.push_back(
            BraidWord::repeat(word_from_json(member(item, "body")), integer_member<std::uint64_t>(item, "count")));
      } else {
        bad("braid word items must be integers or {body, count}");
      }
    }
    flush();
    return BraidWord::concat(parts);
  });
}

Json gen_word_to_json(const GenWord& w) {
  Json out = Json::array();
  for (const auto& l : w) out.push_back((l.label + 1) * l.exponent);
  return out;
}

GenWord gen_word_from_json(const Json& j) {
  if (!j.is_array()) bad("generator word must be an array");
  GenWord out;
  for (const auto& e : j) {
    const int v = integer<int>(e, "generator letter");
    if (v == 0) bad("generator letter 0");
    out.push_back({std::abs(v) - 1, v > 0 ? 1 : -1});
  }
  return out;
}

Json omega_to_json(const OmegaElement& w) { return {{"matrix", matrix_to_json(w.mat)}, {"perm", perm_to_json(w.perm)}}; }

OmegaElement omega_from_json(const Json& j, const FieldPtr& field) {
  OmegaElement w{matrix_from_json(member(j, "matrix"), field), perm_from_json(member(j, "perm"))};
  if (w.perm.size() != w.mat.n()) bad("matrix and permutation sizes differ");
  return w;
}

Json public_payload(const InstancePublic& pub) {
  return {{"field", field_to_json(*pub.field())},
          {"n", pub.n()},
          {"tau", pub.params.tau},
          {"a_gens", words_to(pub.a_gens)},
          {"c_gens", matrices_to(pub.c_gens)}};
}

InstancePublic public_from_payload(const Json& j) {
  return wrap([&] {
    InstancePublic pub;
    FieldPtr field = field_from_json(member(j, "field"));
    const auto n = integer_member<std::size_t>(j, "n");
    std::vector<Elem> tau;
    for (const auto& t : array_member(j, "tau")) tau.push_back(integer<Elem>(t, "tau"));
    if (tau.size() != n) bad("tau has the wrong length");
    pub.params = EvalParams::make(field, std::move(tau));
    pub.a_gens = words_from(array_member(j, "a_gens"));
    for (const auto& w : pub.a_gens)
      if (w.max_index() > static_cast<int>(n) - 1) bad("A generator uses a letter beyond n-1");
    pub.c_gens = matrices_from(array_member(j, "c_gens"), field);
    for (const auto& m : pub.c_gens)
      if (m.n() != n) bad("C generator has the wrong size");
    return pub;
  });
}

Json private_payload(const TtpResult& ttp) {
  return {{"field", field_to_json(*ttp.pub.field())},
          {"n", ttp.pub.n()},
          {"b_gens", words_to(ttp.priv.b_gens)},
          {"d_gens", matrices_to(ttp.priv.d_gens)},
          {"debug",
           {{"conjugator", word_to_json(ttp.debug.conjugator)},
            {"a_cores", words_to(ttp.debug.a_cores)},
            {"b_cores", words_to(ttp.debug.b_cores)},
            {"kappa", matrix_to_json(ttp.debug.kappa)}}}};
}

PrivateFile private_from_payload(const Json& j) {
  return wrap([&] {
    PrivateFile out;
    FieldPtr field = field_from_json(member(j, "field"));
    out.priv.b_gens = words_from(array_member(j, "b_gens"));
    out.priv.d_gens = matrices_from(array_member(j, "d_gens"), field);
    const Json& d = member(j, "debug");
    out.debug.conjugator = word_from_json(member(d, "conjugator"));
    out.debug.a_cores = words_from(array_member(d, "a_cores"));
    out.debug.b_cores = words_from(array_member(d, "b_cores"));
    out.debug.kappa = matrix_from_json(member(d, "kappa"), field);
    return out;
  });
}

Json transcript_payload(const Transcript& t, const Field& field) {
  return {{"field", field_to_json(field)},
          {"alice", omega_to_json(t.alice_msg)},
          {"bob", t.bob_msg ? omega_to_json(*t.bob_msg) : Json(nullptr)}};
}

Transcript transcript_from_payload(const Json& j, FieldPtr* field_out) {
  return wrap([&] {
    FieldPtr field = field_from_json(member(j, "field"));
    Transcript t{omega_from_json(member(j, "alice"), field), std::nullopt};
    const Json& bob = member(j, "bob");
    if (!bob.is_null()) t.bob_msg = omega_from_json(bob, field);
    if (field_out) *field_out = field;
    return t;
  });
}

Json key_payload(const OmegaElement& key, const Field& field) {
  return {{"field", field_to_json(field)}, {"key", omega_to_json(key)}};
}

KeyFile key_from_payload(const Json& j) {
  return wrap([&] {
    FieldPtr field = field_from_json(member(j, "field"));
    return KeyFile{field, omega_from_json(member(j, "key"), field)};
  });
}

Json stats_payload(const AttackStats& s) {
  return {{"n", s.n},
          {"field_order", s.field_order},
          {"dim_v", s.dim_v},
          {"dim_c", s.dim_c},
          {"pure",
           {{"candidates", s.pure.candidates},
            {"skipped", s.pure.skipped},
            {"productive", s.pure.productive},
            {"longest_witness", s.pure.longest_witness}}},
          {"enlargements_used", s.enlargements_used},
          {"stage1_generator_letters", s.stage1_generator_letters},
          {"stage1_word_length", s.stage1_word_length},
          {"group_order", s.group_order},
          {"stage2_tries", s.stage2_tries},
          {"stage2_solution_dim", s.stage2_solution_dim},
          {"eq1_audit", s.eq1_audit},
          {"timing",
           {{"precompute_s", s.seconds.precompute},
            {"stage1_s", s.seconds.stage1},
            {"stage2_s", s.seconds.stage2},
            {"stage3_s", s.seconds.stage3},
            {"recover_s", s.seconds.recover},
            {"total_s", s.seconds.total},
            {"peak_rss_kb", s.peak_rss_kb}}}};
}

AttackStats stats_from_payload(const Json& j) {
  return wrap([&] {
    AttackStats s;
    j.at("n").get_to(s.n);
    j.at("field_order").get_to(s.field_order);
    j.at("dim_v").get_to(s.dim_v);
    j.at("dim_c").get_to(s.dim_c);
    const Json& p = j.at("pure");
    p.at("candidates").get_to(s.pure.candidates);
    p.at("skipped").get_to(s.pure.skipped);
    p.at("productive").get_to(s.pure.productive);
    p.at("longest_witness").get_to(s.pure.longest_witness);
    j.at("enlargements_used").get_to(s.enlargements_used);
    j.at("stage1_generator_letters").get_to(s.stage1_generator_letters);
    j.at("stage1_word_length").get_to(s.stage1_word_length);
    j.at("group_order").get_to(s.group_order);
    j.at("stage2_tries").get_to(s.stage2_tries);
    j.at("stage2_solution_dim").get_to(s.stage2_solution_dim);
    j.at("eq1_audit").get_to(s.eq1_audit);
    const Json& t = j.at("timing");
    t.at("precompute_s").get_to(s.seconds.precompute);
    t.at("stage1_s").get_to(s.seconds.stage1);
    t.at("stage2_s").get_to(s.seconds.stage2);
    t.at("stage3_s").get_to(s.seconds.stage3);
    t.at("recover_s").get_to(s.seconds.recover);
    t.at("total_s").get_to(s.seconds.total);
    t.at("peak_rss_kb").get_to(s.peak_rss_kb);
    return s;
  });
}

Json envelope(Kind kind, Json payload) {
  return {{"format_version", kFormatVersion}, {"kind", kind_name(kind)}, {"payload", std::move(payload)}};
}

Kind envelope_kind(const Json& doc) {
  const Json& version = member(doc, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    bad("unsupported format_version " + version.dump());
  const Json& kind = member(doc, "kind");
  if (!kind.is_string()) bad("kind must be a string");
  return kind_from_name(kind.get<std::string>());
}

Json open_envelope(const Json& doc, Kind expected) {
  const Kind k = envelope_kind(doc);
  if (k != expected)
    bad("expected a " + std::string(kind_name(expected)) + " file, got " + std::string(kind_name(k)));
  return member(doc, "payload");
}

std::string dump(const Json& doc) { return doc.dump() + "\n"; }

void write_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) bad("cannot open " + path.string() + " for writing");
  out << dump(doc);
  if (!out) bad("write to " + path.string() + " failed");
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

}  // namespace eraser::io
