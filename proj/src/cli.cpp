#include "kk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kk/abelian.hpp"
#include "kk/errors.hpp"
#include "kk/fpmod.hpp"
#include "kk/group_io.hpp"
#include "kk/intmat.hpp"
#include "kk/kk_embedding.hpp"
#include "kk/magnus.hpp"
#include "kk/subgroups.hpp"
#include "kk/wreath.hpp"

namespace kk {

namespace {

template <class T>
std::string show(const T& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

template <class Seq>
std::string join(const Seq& xs, char sep = ',') {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += sep;
    out += show(x);
  }
  return out.empty() ? "-" : out;
}

std::string mat_line(const IntMatrix& m) {
  std::string out;
  for (int i = 0; i < m.rows; ++i) {
    if (i) out += ';';
    for (int j = 0; j < m.cols; ++j) {
      if (j) out += ',';
      out += show(m.a[i][j]);
    }
  }
  return out.empty() ? "-" : out;
}

std::string fp_mat_line(const FpMatrix& m) {
  std::string out;
  for (int i = 0; i < m.dim; ++i) {
    if (i) out += ';';
    for (int j = 0; j < m.dim; ++j) {
      if (j) out += ',';
      out += show(m.a[i][j]);
    }
  }
  return out.empty() ? "-" : out;
}

bool small_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::string read_file_quiet(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return {};
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

Subgroup gen_subgroup(const GroupPtr& g, const std::string& list,
                      const char* flag) {
  const std::vector<int> elems = parse_element_list(list);
  for (int e : elems)
    if (e < 0 || e >= g->order())
      throw UsageError(std::string(flag) + " element out of range: " +
                       std::to_string(e));
  return subgroup_generated(g, elems);
}

std::vector<int> parse_prime_set(const std::string& list, int p) {
  if (list.empty()) return {};
  std::vector<int> s = parse_element_list(list);
  std::set<int> seen;
  for (int q : s) {
    if (!small_prime(q)) throw UsageError("--s entry is not prime: " + std::to_string(q));
    if (q == p) throw UsageError("--s must avoid p: " + std::to_string(q));
    if (!seen.insert(q).second)
      throw UsageError("--s entry repeated: " + std::to_string(q));
  }
  return s;
}

void note_context(Report& rep, const KKContext& ctx) {
  rep.note("group-order: " + std::to_string(ctx.g->order()));
  rep.note("a-order: " + std::to_string(ctx.a.order()));
  rep.note("c-order: " + std::to_string(ctx.c.order()));
  rep.note("b-order: " + std::to_string(ctx.b_order()));
  rep.note("abar-order: " + std::to_string(ctx.abar.group->order()));
  rep.note("transversal: " + join(ctx.sect.section));
}

void add_embedding_assertions(Report& rep, const FiniteGroup& g,
                              const Embedding& emb) {
  const long long pairs =
      static_cast<long long>(g.order()) * g.order();
  rep.add("homomorphism", emb.hom_verified,
          "pairs=" + std::to_string(pairs));

  std::string kw = "kernel-order=1";
  if (!emb.kernel_trivial) {
    const WreathElement id = emb.wreath.identity();
    for (int i = 1; i < g.order(); ++i)
      if (emb.images[i] == id) {
        kw = "kernel-element=" + std::to_string(i);
        break;
      }
  }
  rep.add("kernel-trivial", emb.kernel_trivial, kw);

  std::string iw = "distinct-images=" + std::to_string(g.order());
  if (!emb.injective) {
    for (int i = 0; i < g.order() && emb.injective == false; ++i)
      for (int j = i + 1; j < g.order(); ++j)
        if (emb.images[i] == emb.images[j]) {
          iw = "collision=" + std::to_string(i) + "-" + std::to_string(j);
          i = g.order();
          break;
        }
  }
  rep.add("injective", emb.injective, iw);

  if (emb.target)
    rep.add("target-materialized",
            emb.map.verified_hom && emb.map.verified_injective,
            "order=" + std::to_string(emb.target->order()));
}

void note_images(Report& rep, const FiniteGroup& g, const Embedding& emb) {
  for (int i = 0; i < g.order(); ++i) {
    const WreathElement& w = emb.images[i];
    rep.note("image " + std::to_string(i) + ": top=" +
             std::to_string(w.top) + " base=" + join(w.base));
  }
}

void run_embed(const Command& cmd, Report& rep) {
  const GroupPtr g = read_group_file(cmd.group_file);
  const Subgroup a = gen_subgroup(g, cmd.normal_elems, "--normal");
  const bool reduced = !cmd.mod_elems.empty();
  const Subgroup c =
      reduced ? gen_subgroup(g, cmd.mod_elems, "--mod") : trivial_subgroup(g);
  const KKContext ctx = make_kk_context(g, a, c);
  rep.note("mode: " + std::string(reduced ? "reduced" : "full"));
  note_context(rep, ctx);
  const Embedding emb = reduced ? kk_reduced(ctx) : kk_full(ctx);
  if (emb.target)
    rep.note("wreath-order: " + std::to_string(emb.target->order()));
  else
    rep.note("wreath-order: not-materialized");
  note_images(rep, *g, emb);
  add_embedding_assertions(rep, *g, emb);
}

void run_prop1(const Command& cmd, Report& rep) {
  const GroupPtr g = read_group_file(cmd.group_file);
  const Subgroup a = gen_subgroup(g, cmd.normal_elems, "--normal");
  const Subgroup c = cmd.mod_elems.empty()
                         ? trivial_subgroup(g)
                         : gen_subgroup(g, cmd.mod_elems, "--mod");
  const KKContext ctx = make_kk_context(g, a, c);
  note_context(rep, ctx);
  const Embedding emb = kk_reduced(ctx);
  const Prop1Report pr = verify_prop1(ctx, emb);
  rep.note("product-size: " + std::to_string(pr.product_size));
  rep.note("wreath-size: " + std::to_string(pr.wreath_size));
  rep.add("kappa-homomorphism", emb.hom_verified,
          "pairs=" + std::to_string(static_cast<long long>(g->order()) *
                                    g->order()));
  rep.add("kappa-a-in-base", pr.a_maps_into_base,
          "a-order=" + std::to_string(ctx.a.order()));
  rep.add("product-covers", pr.product_covers,
          "got=" + std::to_string(pr.product_size) +
              ";want=" + std::to_string(pr.wreath_size));
  rep.add("kappa-injective", pr.injective,
          "distinct-images=" + std::to_string(g->order()));
}

void run_split(const Command& cmd, Report& rep) {
  const GroupPtr g = read_group_file(cmd.group_file);
  const Subgroup h = gen_subgroup(g, cmd.h_elems, "--h");
  rep.note("group-order: " + std::to_string(g->order()));
  rep.note("h-order: " + std::to_string(h.order()));

  if (h.is_trivial()) {
    rep.note("degenerate: trivial-h");
    const SplitResult res = theorem1_split(g, h);
    rep.note("target-order: " + std::to_string(res.target->order()));
    rep.add("iso-homomorphism", res.iso.verified_hom,
            "pairs=" + std::to_string(static_cast<long long>(g->order()) *
                                      g->order()));
    rep.add("iso-bijective",
            res.iso.verified_injective && res.iso.is_bijective(),
            "order=" + std::to_string(res.target->order()));
    rep.add("kappa-base-full", res.image_of_a_is_base, "fbar-size=1");
    return;
  }

  const SplitCheckReport chk = theorem1_check(g, h);
  std::vector<std::string> sizes;
  for (const Subgroup& s : chk.conjugates)
    sizes.push_back(std::to_string(s.order()));
  rep.note("conjugates: " + std::to_string(chk.n) +
           " of orders " + join(sizes));
  rep.note("a-order: " + std::to_string(chk.a.order()));
  rep.note("normalizer-order: " + std::to_string(chk.normalizer_h.order()));

  rep.add("conjugates-direct", chk.direct.ok,
          chk.direct.ok ? "parts=" + std::to_string(chk.n)
                        : witness_token(chk.direct.witness));
  rep.add("a-normal", chk.a_normal,
          "a-order=" + std::to_string(chk.a.order()));
  rep.add("normalizer-equals-a", chk.normalizer_equals_a,
          "normalizer-order=" + std::to_string(chk.normalizer_h.order()));
  rep.add("quotient-order-matches", chk.quotient_order_matches,
          "n=" + std::to_string(chk.n));
  if (!chk.ok()) return;

  const Quotient quo = quotient_with_projection(chk.a);
  rep.note("transversal: " + join(transversal(quo).section));
  const SplitResult res = theorem1_split(g, h);
  rep.note("target-order: " + std::to_string(res.target->order()));
  rep.add("iso-homomorphism", res.iso.verified_hom,
          "pairs=" + std::to_string(static_cast<long long>(g->order()) *
                                    g->order()));
  rep.add("iso-bijective",
          res.iso.verified_injective && res.iso.is_bijective(),
          "order=" + std::to_string(res.target->order()));
  unsigned long long fbar = 1;
  for (int i = 0; i < chk.n; ++i) fbar *= h.order();
  rep.add("kappa-base-full", res.image_of_a_is_base,
          "fbar-size=" + std::to_string(fbar));
}

std::string monomial_str(const Monomial& m) {
  return "x^" + std::to_string(m.first) + "*y^" + std::to_string(m.second);
}

void run_magnus(const Command& cmd, Report& rep) {
  if (cmd.action == "eval") {
    const FreeWord w = FreeWord::parse(cmd.args.at(0));
    const TriMat2 m = magnus_eval(w);
    rep.note("word: " + w.str());
    rep.note("a11: " + m.a11.str());
    rep.note("a12: " + m.a12.str());
    rep.note("a22: " + m.a22.str());
    const MembershipReport mr = derived_membership(w);
    rep.note("in-derived: " + std::string(mr.in_derived() ? "yes" : "no"));
    rep.add("diagonal-matches-exponents", mr.consistent(),
            "a-sum=" + std::to_string(mr.a_sum) +
                ";b-sum=" + std::to_string(mr.b_sum));
    rep.add("determinant-unit",
            m.a11.is_unit_monomial() && m.a22.is_unit_monomial(),
            "a11=" + witness_token(m.a11.str()));
    return;
  }
  if (cmd.action == "dij") {
    long long i = 0, j = 0;
    try {
      i = std::stoll(cmd.args.at(0));
      j = std::stoll(cmd.args.at(1));
    } catch (const std::exception&) {
      throw UsageError("dij arguments must be integers: " + cmd.args.at(0) +
                       " " + cmd.args.at(1));
    }
    const TriMat2 m = magnus_dij(i, j);
    const LaurentPoly want = dij_closed_form(i, j);
    rep.note("a11: " + m.a11.str());
    rep.note("a12: " + m.a12.str());
    rep.note("a22: " + m.a22.str());
    rep.note("closed-form: " + want.str());
    rep.add("diagonal-identity", m.a11.is_one() && m.a22.is_one(), "diag=1,1");
    rep.add("a12-matches-closed-form", m.a12 == want,
            "terms=" + std::to_string(m.a12.terms().size()));
    return;
  }
  // independence
  if (cmd.window < 0) throw UsageError("--window must be >= 0");
  const long long k = cmd.window;
  std::vector<LaurentPoly> polys;
  int idx = 0;
  for (long long i = -k; i <= k; ++i)
    for (long long j = -k; j <= k; ++j) {
      polys.push_back(magnus_dij(i, j).a12);
      rep.note("input " + std::to_string(idx++) + ": d(" + std::to_string(i) +
               "," + std::to_string(j) + ")");
    }
  const IndependenceResult res = z_linear_independence(polys);
  for (const auto& [input, mono] : res.pivots)
    rep.note("pivot input=" + std::to_string(input) + " at " +
             monomial_str(mono));
  std::string witness = "rank=" + std::to_string(res.rank);
  if (!res.independent) {
    std::vector<std::string> coef;
    for (const BigInt& c : res.dependency) coef.push_back(show(c));
    witness = "dependency=" + join(coef);
  }
  rep.add("z-linear-independent", res.independent, witness);
}

void run_abelian(const Command& cmd, Report& rep) {
  if (cmd.action == "snf") {
    const IntMatrix m = read_matrix_file(cmd.args.at(0));
    const SmithResult res = smith_normal_form(m);
    rep.note("m: " + mat_line(m));
    rep.note("u: " + mat_line(res.u));
    rep.note("d: " + mat_line(res.d));
    rep.note("v: " + mat_line(res.v));
    std::vector<BigInt> invariants;
    for (int i = 0; i < std::min(res.d.rows, res.d.cols); ++i)
      if (res.d.a[i][i] != 0) invariants.push_back(res.d.a[i][i]);
    rep.note("invariant-factors: " + join(invariants));

    rep.add("reconstruction",
            res.u.multiply(m).multiply(res.v) == res.d, "u*m*v=d");
    const BigInt du = determinant(res.u);
    const BigInt dv = determinant(res.v);
    rep.add("u-unimodular", du == 1 || du == -1, "det=" + show(du));
    rep.add("v-unimodular", dv == 1 || dv == -1, "det=" + show(dv));
    bool chain = true;
    for (std::size_t i = 0; i + 1 < invariants.size(); ++i)
      if (invariants[i + 1] % invariants[i] != 0) chain = false;
    rep.add("divisibility-chain", chain, "factors=" + join(invariants));
    return;
  }
  if (cmd.action == "lemma-cb") {
    const IntMatrix t = read_matrix_file(cmd.args.at(0));
    std::vector<std::vector<BigInt>> targets;
    std::vector<int> cutoffs;
    for (int r = 0; r < t.rows; ++r) {
      targets.push_back(t.a[r]);
      int last = -1;
      for (int c = 0; c < t.cols; ++c)
        if (t.a[r][c] != 0) last = c;
      if (last < 0)
        throw UsageError("target row is zero: " + std::to_string(r));
      cutoffs.push_back(last + 1);
    }
    const auto [basis, hrep] = lemma_cb_rounds(t.cols, targets, cutoffs);
    rep.note("k: " + std::to_string(t.cols));
    rep.note("basis: " + mat_line(basis.basis));
    rep.note("target-rows: " + join(basis.target_rows));
    const BigInt det = determinant(basis.basis);
    rep.add("basis-unimodular", det == 1 || det == -1, "det=" + show(det));
    rep.add("targets-unit-coordinates", hrep.unit_coordinates,
            "targets=" + std::to_string(targets.size()));
    rep.add("multiples-avoided", hrep.multiples_avoided,
            "bound=" + std::to_string(hrep.bound));
    rep.add("all-multiples-argument", hrep.all_m_argument, "sum=m");
    const RankOneReport rr = quotient_rank_one_check(basis);
    rep.note("sigma: " + join(rr.sigma));
    rep.add("quotient-rank-one", rr.ok(),
            "h-invariants=" + join(rr.h_invariants));
    return;
  }
  // lemma-cc
  const GroupPtr g = read_group_file(cmd.group_file);
  const Subgroup a = gen_subgroup(g, cmd.a_elems, "--a");
  const LemmaCcResult res = lemma_cc_C(g, a);
  rep.note("group-order: " + std::to_string(g->order()));
  rep.note("a-order: " + std::to_string(a.order()));
  rep.note("c-order: " + std::to_string(res.c.order()));
  rep.note("c-elements: " + join(res.c.elements));
  for (std::size_t i = 0; i < res.primes.size(); ++i)
    rep.note("prime " + std::to_string(res.primes[i]) +
             ": c_p-order=" + std::to_string(res.c_blocks[i].order()) +
             " e_p-order=" + std::to_string(res.e_blocks[i].order()) +
             " f_p-order=" + std::to_string(res.f_blocks[i].order()));
  rep.add("core-trivial", res.core_trivial,
          "c-order=" + std::to_string(res.c.order()));
  rep.add("exponent-divides", res.exponent_divides, "quotient-exponent");
  rep.add("certificate-complete", true,
          "normal-subgroups=" + std::to_string(res.certificate.size()));
  for (std::size_t i = 0; i < res.certificate.size(); ++i) {
    const auto& entry = res.certificate[i];
    rep.add("escapes-normal-" + std::to_string(i), true,
            "order=" + std::to_string(entry.normal_elements.size()) +
                ";witness-element=" + std::to_string(entry.witness));
  }
}

void run_fp(const Command& cmd, Report& rep) {
  if (cmd.p < 2 || !small_prime(cmd.p))
    throw UsageError("--p must be prime: " + std::to_string(cmd.p));
  const std::vector<int> s = parse_prime_set(cmd.s_list, cmd.p);

  if (cmd.action == "fingerprint") {
    const std::vector<long long> fp = fingerprint(cmd.p, s);
    rep.note("fingerprint: " + join(fp));
    rep.add("fingerprint-computed", !fp.empty(),
            "indices=" + join(fp));
    rep.add("indices-distinct",
            std::set<long long>(fp.begin(), fp.end()).size() == fp.size(),
            "count=" + std::to_string(fp.size()));
    return;
  }
  if (cmd.action == "local") {
    const LocalStructureReport res =
        local_structure_check(cmd.p, s, cmd.seed);
    rep.note("seed: " + std::to_string(cmd.seed));
    rep.note("trials: " + std::to_string(res.trials.size()));
    for (std::size_t t = 0; t < res.trials.size(); ++t) {
      const auto& trial = res.trials[t];
      const bool pass = trial.base_part_normal && trial.quotient_cyclic &&
                        trial.inside_sub_sum;
      std::string w = "gens=" + join(trial.gens, '-');
      if (!trial.base_part_normal) w += ";base-not-normal";
      if (!trial.quotient_cyclic) w += ";quotient-not-cyclic";
      if (!trial.inside_sub_sum) w += ";outside-sub-sum";
      rep.add("trial-" + std::to_string(t), pass, w);
    }
    rep.add("local-structure-all", res.all_ok,
            "trials=" + std::to_string(res.trials.size()));
    return;
  }
  // embed
  const Theorem3Result res = theorem3_embed(cmd.p, s);
  for (const FpBlock& b : res.trunc.decomp.blocks)
    rep.note("block q=" + std::to_string(b.q) +
             ": dim=" + std::to_string(b.dim) +
             " minpoly=" + join(b.min_poly) +
             " action=" + fp_mat_line(b.action));
  rep.note("n: " + std::to_string(res.trunc.n));
  rep.note("base-dim: " + std::to_string(res.trunc.decomp.total_dim));
  note_context(rep, res.ctx);
  if (res.emb.target)
    rep.note("wreath-order: " + std::to_string(res.emb.target->order()));
  else
    rep.note("wreath-order: not-materialized");
  rep.add("hyperplane-codim-one", res.cert.codim_one,
          "dim=" + std::to_string(res.cert.dim));
  rep.add("blocks-escape-hyperplane", res.cert.blocks_escape,
          "blocks=" + std::to_string(res.trunc.decomp.blocks.size()));
  rep.add("submodule-scan", !res.cert.scan_done || res.cert.scan_clean,
          res.cert.scan_done
              ? "submodules=" + std::to_string(res.cert.submodules_found) +
                    (res.cert.only_sub_sums ? ";all-sub-sums" : "")
              : "skipped-space-too-large");
  add_embedding_assertions(rep, *res.trunc.realized, res.emb);
}

void run_blowup(const Command& cmd, Report& rep) {
  const std::string& first = cmd.args.at(0);
  const std::string& second = cmd.args.at(1);
  if (first.rfind("bottom=", 0) != 0) throw UsageError(first);
  if (second.rfind("top=", 0) != 0) throw UsageError(second);
  const GroupPtr d = read_group_file(first.substr(7));
  const GroupPtr b0 = read_group_file(second.substr(4));
  const Subgroup b = gen_subgroup(b0, cmd.h_elems, "--h");

  std::vector<int> t;
  std::vector<char> covered(b0->order(), 0);
  for (int x = 0; x < b0->order(); ++x) {
    if (covered[x]) continue;
    t.push_back(x);
    for (int y : b.elements) covered[b0->mul(x, y)] = 1;
  }
  rep.note("bottom-order: " + std::to_string(d->order()));
  rep.note("top-order: " + std::to_string(b0->order()));
  rep.note("b-order: " + std::to_string(b.order()));
  rep.note("index: " + std::to_string(t.size()));
  rep.note("transversal: " + join(t));

  const BlowupResult res = index_blowup_iso(d, b0, b, t);
  rep.note("domain-order: " + std::to_string(res.domain->order()));
  rep.note("target-order: " + std::to_string(res.target->order()));
  rep.add("iso-homomorphism", res.iso.verified_hom,
          "pairs=" + std::to_string(static_cast<long long>(
                         res.domain->order()) *
                     res.domain->order()));
  rep.add("iso-bijective",
          res.iso.verified_injective && res.iso.is_bijective(),
          "order=" + std::to_string(res.target->order()));

  // The map must be the identity on B: the pure-top element for the i-th
  // element of B sits at domain index i*fcount and must land on target
  // index i*fbar (top-major encodings on both sides).
  const int fcount = res.domain->order() / b.order();
  const int fbar = res.target->order() / b.order();
  bool id_on_top = true;
  for (int i = 0; i < b.order(); ++i)
    if (res.iso.image[static_cast<std::size_t>(i) * fcount] != i * fbar)
      id_on_top = false;
  rep.add("identity-on-top", id_on_top,
          "tops=" + std::to_string(b.order()));
}

std::string error_witness(const Error& e) { return witness_token(e.what()); }

}  // namespace

Command parse_command(const std::vector<std::string>& argv) {
  Command cmd;
  cmd.echo = argv;

  CLI::App app{"wreath-product embedding toolkit"};
  app.name("kk");
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");

  const auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help and exit");
    sub->add_option("--format", cmd.format, "report format")
        ->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--out", cmd.out_file, "also write the report here");
    sub->add_option("--seed", cmd.seed, "seed for randomized checks");
  };

  CLI::App* embed = app.add_subcommand("embed", "wreath product embedding");
  add_common(embed);
  embed->add_option("--group", cmd.group_file, "group file")->required();
  embed->add_option("--normal", cmd.normal_elems, "generators of A")->required();
  embed->add_option("--mod", cmd.mod_elems, "generators of C");

  CLI::App* prop1 = app.add_subcommand("prop1", "image-size count");
  add_common(prop1);
  prop1->add_option("--group", cmd.group_file)->required();
  prop1->add_option("--normal", cmd.normal_elems)->required();
  prop1->add_option("--mod", cmd.mod_elems);

  CLI::App* split = app.add_subcommand("split", "wreath splitting");
  add_common(split);
  split->add_option("--group", cmd.group_file)->required();
  split->add_option("--h", cmd.h_elems, "generators of H")->required();

  CLI::App* magnus = app.add_subcommand("magnus", "matrix embedding");
  magnus->require_subcommand(1);
  std::string word;
  std::string di, dj;
  CLI::App* meval = magnus->add_subcommand("eval", "evaluate a word");
  add_common(meval);
  meval->add_option("word", word, "word in a,b,A,B")->required();
  CLI::App* mdij = magnus->add_subcommand("dij", "conjugated commutator");
  add_common(mdij);
  mdij->add_option("i", di)->required();
  mdij->add_option("j", dj)->required();
  CLI::App* mind = magnus->add_subcommand("independence", "window check");
  add_common(mind);
  mind->add_option("--window", cmd.window, "max |i|,|j|")->required();

  CLI::App* abelian = app.add_subcommand("abelian", "lattice machinery");
  abelian->require_subcommand(1);
  std::string matrix_file;
  CLI::App* snf = abelian->add_subcommand("snf", "Smith normal form");
  add_common(snf);
  snf->add_option("matrix", matrix_file, "matrix file")->required();
  CLI::App* lcb = abelian->add_subcommand("lemma-cb", "basis rounds");
  add_common(lcb);
  lcb->add_option("targets", matrix_file, "targets file, one per row")
      ->required();
  CLI::App* lcc = abelian->add_subcommand("lemma-cc", "core-free C");
  add_common(lcc);
  lcc->add_option("--group", cmd.group_file)->required();
  lcc->add_option("--a", cmd.a_elems, "generators of A")->required();

  CLI::App* fp = app.add_subcommand("fp", "F_p module constructions");
  fp->require_subcommand(1);
  CLI::App* fpe = fp->add_subcommand("embed", "truncated embedding");
  add_common(fpe);
  fpe->add_option("--p", cmd.p)->required();
  fpe->add_option("--s", cmd.s_list);
  CLI::App* fpf = fp->add_subcommand("fingerprint", "centralizer indices");
  add_common(fpf);
  fpf->add_option("--p", cmd.p)->required();
  fpf->add_option("--s", cmd.s_list);
  CLI::App* fpl = fp->add_subcommand("local", "random subgroup structure");
  add_common(fpl);
  fpl->add_option("--p", cmd.p)->required();
  fpl->add_option("--s", cmd.s_list);

  CLI::App* blowup = app.add_subcommand("blowup", "finite-index rewrite");
  add_common(blowup);
  std::string bottom_arg, top_arg;
  blowup->add_option("bottom", bottom_arg, "bottom=<groupfile>")->required();
  blowup->add_option("top", top_arg, "top=<groupfile>")->required();
  blowup->add_option("--h", cmd.h_elems, "generators of B")->required();

  std::vector<std::string> rest(argv.begin() + (argv.empty() ? 0 : 1),
                                argv.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequest{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequest{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::vector<std::string> left = app.remaining(true);
    if (!left.empty()) {
      std::reverse(left.begin(), left.end());
      msg += " (unexpected:";
      for (const std::string& tok : left) msg += " " + tok;
      msg += ")";
    }
    throw UsageError(msg);
  }

  for (CLI::App* sub : app.get_subcommands()) {
    cmd.verb = sub->get_name();
    for (CLI::App* nested : sub->get_subcommands())
      cmd.action = nested->get_name();
  }
  if (cmd.verb == "magnus") {
    if (cmd.action == "eval") cmd.args = {word};
    if (cmd.action == "dij") cmd.args = {di, dj};
  }
  if (cmd.verb == "abelian" &&
      (cmd.action == "snf" || cmd.action == "lemma-cb"))
    cmd.args = {matrix_file};
  if (cmd.verb == "blowup") cmd.args = {bottom_arg, top_arg};
  return cmd;
}

Report run(const Command& cmd) {
  Report rep;
  rep.command = join(cmd.echo, ' ');

  std::vector<std::string> digest_parts = cmd.echo;
  if (!cmd.group_file.empty())
    digest_parts.push_back(read_file_quiet(cmd.group_file));
  for (const std::string& arg : cmd.args) {
    std::string path = arg;
    if (path.rfind("bottom=", 0) == 0) path = path.substr(7);
    if (path.rfind("top=", 0) == 0) path = path.substr(4);
    if (cmd.verb == "abelian" || cmd.verb == "blowup")
      digest_parts.push_back(read_file_quiet(path));
  }
  rep.digest = fnv1a_hex(digest_parts);

  try {
    if (cmd.verb == "embed") run_embed(cmd, rep);
    else if (cmd.verb == "prop1") run_prop1(cmd, rep);
    else if (cmd.verb == "split") run_split(cmd, rep);
    else if (cmd.verb == "magnus") run_magnus(cmd, rep);
    else if (cmd.verb == "abelian") run_abelian(cmd, rep);
    else if (cmd.verb == "fp") run_fp(cmd, rep);
    else if (cmd.verb == "blowup") run_blowup(cmd, rep);
    else throw UsageError(cmd.verb.empty() ? "missing subcommand" : cmd.verb);
  } catch (const UsageError&) {
    throw;
  } catch (const IoError&) {
    throw;
  } catch (const HypothesisFailed& e) {
    rep.add("split-hypotheses", false, e.hypothesis);
  } catch (const CoreNotTrivial& e) {
    std::vector<int> head(e.core.begin(),
                          e.core.begin() + std::min<std::size_t>(
                                               e.core.size(), 8));
    rep.add("core-trivial", false,
            "core-order=" + std::to_string(e.core.size()) +
                ";elements=" + join(head));
  } catch (const NoValidCp& e) {
    rep.add("cp-core-trivial", false, "p=" + std::to_string(e.prime));
  } catch (const SizeCap& e) {
    rep.add("size-cap", false, error_witness(e));
  } catch (const NotAGroup& e) {
    rep.add("group-valid", false, error_witness(e));
  } catch (const Error& e) {
    rep.add("module-error", false, error_witness(e));
  }
  return rep;
}

int cli_main(const std::vector<std::string>& argv) {
  try {
    const Command cmd = parse_command(argv);
    const auto start = std::chrono::steady_clock::now();
    Report rep = run(cmd);
    rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    const std::string bytes =
        emit_report(rep, parse_format(cmd.format));
    std::cout << bytes << std::flush;
    if (!cmd.out_file.empty()) {
      std::ofstream f(cmd.out_file, std::ios::binary);
      if (!f) throw IoError("cannot write " + cmd.out_file);
      f << bytes;
    }
    std::cerr << "timing: " << rep.timing_ms << " ms\n";
    return rep.all_pass() ? 0 : 1;
  } catch (const HelpRequest& h) {
    std::cout << h.text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace kk
