#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "pedcomb/counterexample.hpp"
#include "pedcomb/enumeration.hpp"
#include "pedcomb/io.hpp"
#include "pedcomb/isomorphism.hpp"
#include "pedcomb/pedigree.hpp"
#include "pedcomb/reconstruction.hpp"

// Exit codes: 0 success, 1 no result (reconstruct), 2 invalid input,
// 3 verification failure, 4 resource limit.

namespace {

using nlohmann::ordered_json;
using namespace pedcomb;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(digits[md[i] >> 4]);
    out.push_back(digits[md[i] & 0xf]);
  }
  return out;
}

ordered_json witness_json(const LabelledIsomorphism& iso) {
  auto arr = ordered_json::array();
  for (auto [from, to] : iso.map) arr.push_back({from, to});
  return arr;
}

std::string rational_string(const BigRat& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  std::string out = num.convert_to<std::string>();
  if (den != 1) out += "/" + den.convert_to<std::string>();
  return out;
}

// --ordering i:a,b,c (repeatable)
CounterexampleOptions parse_orderings(const std::vector<std::string>& specs) {
  CounterexampleOptions opt;
  for (const std::string& spec : specs) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--ordering expects i:a,b,...");
    int index = std::stoi(spec.substr(0, colon));
    std::vector<int> ordering;
    std::stringstream ss(spec.substr(colon + 1));
    std::string part;
    while (std::getline(ss, part, ',')) ordering.push_back(std::stoi(part));
    opt.orderings[index] = ordering;
  }
  return opt;
}

struct OutputSet {
  std::filesystem::path dir;
  std::map<std::string, std::string> files;  // name -> content

  void add(const std::string& name, const std::string& content) {
    files[name] = content;
  }
  void flush(const std::string& command, const ordered_json& parameters) {
    std::filesystem::create_directories(dir);
    ordered_json manifest;
    manifest["format"] = "pedcomb-manifest-v1";
    manifest["command"] = command;
    manifest["parameters"] = parameters;
    auto digests = ordered_json::object();
    for (const auto& [name, content] : files) {
      write_file((dir / name).string(), content);
      digests[name] = sha256_hex(content);
    }
    manifest["outputs"] = std::move(digests);
    write_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  }
};

std::string hypergraphs_text(int n) {
  auto [g, h] = build_hypergraphs(n);
  std::ostringstream os;
  auto dump = [&](char name, const std::vector<std::vector<BitString>>& edges) {
    for (int i = 1; i <= n; ++i) {
      os << name << i << " = {";
      for (std::size_t k = 0; k < edges[i - 1].size(); ++k) {
        if (k) os << ", ";
        os << edges[i - 1][k].str();
      }
      os << "}\n";
    }
  };
  dump('g', g.edges);
  dump('h', h.edges);
  return os.str();
}

int cmd_counterexample(int n, const std::vector<std::string>& ordering_specs,
                       bool genderize_flag, const std::string& outdir) {
  CounterexampleOptions opt = parse_orderings(ordering_specs);
  CounterexamplePair pair = build_counterexample(n, opt);

  Pedigree out_t = pair.t;
  Pedigree out_u = pair.u;
  if (genderize_flag) {
    out_t = genderize(pair.t);
    out_u = genderize(pair.u);
    if (!find_gender_labelling(out_t).assignment ||
        !find_gender_labelling(out_u).assignment)
      throw VerificationFailure("genderized output admits no gender labelling");
  }

  // Every deletion has an explicit verified witness; that is the
  // (n-1)-hypomorphism proof. Non-isomorphism: founder counts always
  // differ; at desk scale run the generic search too.
  ordered_json witnesses = ordered_json::object();
  for (int j = 1; j <= n; ++j) {
    std::vector<std::string> keep;
    for (int i = 1; i <= n; ++i)
      if (i != j) keep.push_back("x" + std::to_string(i));
    Pedigree tj = sub_pedigree(pair.t, keep);
    Pedigree uj = sub_pedigree(pair.u, keep);
    LabelledIsomorphism w = hypomorphism_witness(pair, j);
    if (!verify_isomorphism(tj, uj, w))
      throw VerificationFailure("witness " + std::to_string(j) + " failed");
    if (genderize_flag) {
      Pedigree gtj = sub_pedigree(out_t, keep);
      Pedigree guj = sub_pedigree(out_u, keep);
      w = lift_witness(tj, uj, w, gtj, guj);
      if (!verify_isomorphism(gtj, guj, w))
        throw VerificationFailure("lifted witness " + std::to_string(j) + " failed");
    }
    witnesses["x" + std::to_string(j)] = witness_json(w);
  }

  int t_founders = 0, u_founders = 0;
  for (int v = 0; v < out_t.vertex_count(); ++v) t_founders += out_t.is_founder(v);
  for (int v = 0; v < out_u.vertex_count(); ++v) u_founders += out_u.is_founder(v);
  if (t_founders == u_founders)
    throw VerificationFailure("founder-count certificate failed");
  if (n <= 6 && find_isomorphism(out_t, out_u))
    throw VerificationFailure("pair is isomorphic");
  if (n <= 5 && !are_r_hypomorphic(out_t, out_u, n - 1))
    throw VerificationFailure("pair is not (n-1)-hypomorphic");

  OutputSet out;
  out.dir = outdir;
  out.add("T.json", pedigree_to_json(out_t));
  out.add("U.json", pedigree_to_json(out_u));
  out.add("T.dot", pedigree_to_dot(out_t));
  out.add("U.dot", pedigree_to_dot(out_u));
  out.add("hypergraphs.txt", hypergraphs_text(n));
  ordered_json wfile;
  wfile["format"] = "pedcomb-witnesses-v1";
  wfile["n"] = n;
  wfile["genderized"] = genderize_flag;
  wfile["witnesses"] = std::move(witnesses);
  out.add("witnesses.json", wfile.dump(2) + "\n");

  ordered_json params;
  params["n"] = n;
  params["genderize"] = genderize_flag;
  auto ords = ordered_json::object();
  for (int i = 1; i <= n; ++i)
    ords["x" + std::to_string(i)] = pair.orderings[i - 1];
  params["orderings"] = std::move(ords);
  out.flush("counterexample", params);
  std::cout << "wrote " << out.files.size() + 1 << " files to " << outdir << "\n";
  return 0;
}

int cmd_verify(const std::string& file_a, const std::string& file_b, int r,
               bool json_out) {
  Pedigree a = pedigree_from_json(read_file(file_a));
  Pedigree b = pedigree_from_json(read_file(file_b));
  if (a.extant_labels() != b.extant_labels())
    throw std::invalid_argument("extant label lists differ");
  if (r < 1 || r > a.order()) throw std::invalid_argument("r out of range");

  auto full = find_isomorphism(a, b);
  ordered_json report;
  report["isomorphic"] = full.has_value();
  report["witness"] = full ? witness_json(*full) : ordered_json(nullptr);
  report["r"] = r;

  bool hypomorphic = true;
  auto subsets = ordered_json::array();
  std::vector<int> comb(r);
  for (int i = 0; i < r; ++i) comb[i] = i;
  while (true) {
    std::vector<std::string> keep;
    for (int pos : comb) keep.push_back(a.extant_labels()[pos]);
    Pedigree sa = sub_pedigree(a, keep);
    Pedigree sb = sub_pedigree(b, keep);
    auto iso = find_isomorphism(sa, sb);
    hypomorphic &= iso.has_value();
    ordered_json entry;
    entry["labels"] = keep;
    entry["isomorphic"] = iso.has_value();
    entry["witness"] = iso ? witness_json(*iso) : ordered_json(nullptr);
    subsets.push_back(std::move(entry));
    int i = r - 1;
    while (i >= 0 && comb[i] == a.order() - (r - i)) i--;
    if (i < 0) break;
    comb[i]++;
    for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
  report["hypomorphic"] = hypomorphic;
  report["subsets"] = std::move(subsets);

  if (json_out) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "isomorphic: " << (full ? "true" : "false") << "\n";
    std::cout << "hypomorphic (r=" << r << "): " << (hypomorphic ? "true" : "false")
              << "\n";
    for (auto& entry : report["subsets"]) {
      std::cout << "  {";
      bool first = true;
      for (auto& l : entry["labels"]) {
        if (!first) std::cout << ",";
        std::cout << l.get<std::string>();
        first = false;
      }
      std::cout << "}: " << (entry["isomorphic"].get<bool>() ? "isomorphic" : "different")
                << "\n";
    }
  }
  return 0;
}

int cmd_bounds(const std::string& model, int n, int d, int t) {
  ordered_json report;
  report["model"] = model;
  report["n"] = n;
  report["d"] = d;
  std::optional<BigRat> lower;
  BigInt upper;
  if (model == "discrete") {
    auto b = bounds_N(n, d);
    lower = b.lower;
    upper = b.upper;
  } else if (model == "general") {
    auto b = bounds_M(n, d);
    lower = b.lower;
    upper = b.upper;
  } else if (model == "gap") {
    if (t < 1) throw std::invalid_argument("gap model needs --t");
    report["t"] = t;
    lower = bounded_gap_lower_M(n, d, t);
    upper = bounds_M(n, d).upper;
  } else {
    throw std::invalid_argument("model must be discrete, general or gap");
  }
  report["lower"] = lower ? ordered_json(rational_string(*lower)) : ordered_json(nullptr);
  report["upper"] = upper.convert_to<std::string>();
  report["site_bound"] =
      lower ? ordered_json(site_bound(*lower, n)) : ordered_json(nullptr);
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_census(int n, int d, bool strict, bool json_out) {
  BigInt exact = brute_count_N(n, d, strict);
  auto b = bounds_N(n, d);
  bool within = BigRat(exact) >= *b.lower && exact <= b.upper;
  // Childless mid-layer admissibility changes the count only for d >= 2;
  // report both models whenever they disagree.
  std::optional<BigInt> other;
  if (d >= 2) {
    BigInt alt = brute_count_N(n, d, !strict);
    if (alt != exact) other = alt;
  }
  if (json_out) {
    ordered_json report;
    report["n"] = n;
    report["d"] = d;
    report["strict_population"] = strict;
    report["exact"] = exact.convert_to<std::string>();
    if (other)
      report[strict ? "exact_default" : "exact_strict"] =
          other->convert_to<std::string>();
    report["lower"] = rational_string(*b.lower);
    report["upper"] = b.upper.convert_to<std::string>();
    report["within_bounds"] = within;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "N(" << n << "," << d << (strict ? ",strict" : "") << ") = " << exact
              << "  bounds [" << rational_string(*b.lower) << ", " << b.upper
              << "]  " << (within ? "within-bounds" : "OUT-OF-BOUNDS") << "\n";
    if (other)
      std::cout << "note: the " << (strict ? "default" : "strict-population")
                << " model counts " << *other << "\n";
  }
  if (!within) throw VerificationFailure("exact count escaped the proven bounds");
  return 0;
}

int cmd_reconstruct(const std::string& deck_file, const std::string& out_file,
                    bool json_out) {
  DeckOfPedigrees cards = cards_from_json(read_file(deck_file));
  ReconOutcome outcome = reconstruct(cards);
  if (outcome.status == ReconStatus::Reconstructed) {
    std::string text = pedigree_to_json(*outcome.pedigree);
    if (!out_file.empty()) {
      write_file(out_file, text);
      std::cout << "reconstructed -> " << out_file << "\n";
    } else {
      std::cout << text;
    }
    return 0;
  }
  if (json_out) {
    ordered_json report;
    report["status"] = to_string(outcome.status);
    report["note"] = outcome.note;
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << to_string(outcome.status) << ": " << outcome.note << "\n";
  }
  return 1;
}

int cmd_probe(const std::string& pedigree_file, int r, int max_vertices,
              const std::string& out_file, bool json_out) {
  Pedigree p = pedigree_from_json(read_file(pedigree_file));
  ProbeResult res = brute_reconstructibility(p, r, max_vertices);
  if (json_out) {
    ordered_json report;
    report["reconstructible"] = res.reconstructible;
    report["examined"] = res.examined;
    report["counterpart"] =
        res.counterpart
            ? ordered_json::parse(pedigree_to_json(*res.counterpart))
            : ordered_json(nullptr);
    std::cout << report.dump(2) << "\n";
  } else if (res.reconstructible) {
    std::cout << "Reconstructible within universe (examined " << res.examined
              << " candidates)\n";
  } else {
    std::cout << "CounterpartFound (examined " << res.examined << " candidates)\n";
  }
  if (res.counterpart && !out_file.empty()) {
    write_file(out_file, pedigree_to_json(*res.counterpart));
    std::cout << "counterpart -> " << out_file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pedigree reconstruction and enumeration toolkit"};
  app.require_subcommand(1);

  auto* ce = app.add_subcommand("counterexample",
                                "emit a non-isomorphic (n-1)-hypomorphic pair");
  int ce_n = 3;
  std::vector<std::string> ce_orderings;
  bool ce_genderize = false;
  std::string ce_outdir = ".";
  ce->add_option("--n", ce_n, "order (>= 3)")->required();
  ce->add_option("--ordering", ce_orderings,
                 "digit ordering per tree, e.g. 5:2,3,1,4 (repeatable)");
  ce->add_flag("--genderize", ce_genderize, "emit the gender-labelled variant");
  ce->add_option("--outdir", ce_outdir, "output directory")->required();

  auto* vf = app.add_subcommand("verify", "isomorphism and hypomorphism report");
  std::string vf_a, vf_b;
  int vf_r = 1;
  bool vf_json = false;
  vf->add_option("--a", vf_a, "first pedigree JSON")->required();
  vf->add_option("--b", vf_b, "second pedigree JSON")->required();
  vf->add_option("--r", vf_r, "subset size")->required();
  vf->add_flag("--json", vf_json, "machine-readable output");

  auto* bd = app.add_subcommand("bounds", "enumeration bounds and site bound");
  std::string bd_model = "discrete";
  int bd_n = 2, bd_d = 1, bd_t = 0;
  bd->add_option("--model", bd_model, "discrete | general | gap")->required();
  bd->add_option("--n", bd_n, "population per generation")->required();
  bd->add_option("--d", bd_d, "depth")->required();
  bd->add_option("--t", bd_t, "gap parameter (gap model)");

  auto* cs = app.add_subcommand("census", "exact count with bound check");
  int cs_n = 2, cs_d = 1;
  bool cs_strict = false, cs_json = false;
  cs->add_option("--n", cs_n, "population per generation")->required();
  cs->add_option("--d", cs_d, "depth")->required();
  cs->add_flag("--strict-population", cs_strict,
               "require every non-bottom vertex to be a parent");
  cs->add_flag("--json", cs_json, "machine-readable output");

  auto* rc = app.add_subcommand("reconstruct", "rebuild a pedigree from its deck");
  std::string rc_deck, rc_out;
  bool rc_json = false;
  rc->add_option("--deck", rc_deck, "cards JSON file")->required();
  rc->add_option("--out", rc_out, "write the pedigree here");
  rc->add_flag("--json", rc_json, "machine-readable diagnostics");

  auto* pb = app.add_subcommand("probe", "brute-force reconstructibility oracle");
  std::string pb_pedigree, pb_out;
  int pb_r = 2, pb_max = 8;
  bool pb_json = false;
  pb->add_option("--pedigree", pb_pedigree, "pedigree JSON file")->required();
  pb->add_option("--r", pb_r, "deck subset size")->required();
  pb->add_option("--max-vertices", pb_max, "universe bound")->required();
  pb->add_option("--out", pb_out, "write a found counterpart here");
  pb->add_flag("--json", pb_json, "machine-readable output");

  try {
    app.parse(argc, argv);
    if (ce->parsed())
      return cmd_counterexample(ce_n, ce_orderings, ce_genderize, ce_outdir);
    if (vf->parsed()) return cmd_verify(vf_a, vf_b, vf_r, vf_json);
    if (bd->parsed()) return cmd_bounds(bd_model, bd_n, bd_d, bd_t);
    if (cs->parsed()) return cmd_census(cs_n, cs_d, cs_strict, cs_json);
    if (rc->parsed()) return cmd_reconstruct(rc_deck, rc_out, rc_json);
    if (pb->parsed()) return cmd_probe(pb_pedigree, pb_r, pb_max, pb_out, pb_json);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
