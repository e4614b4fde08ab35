// Command-line front end: corpus verification, Fitting heights, sigma membership,
// identity checks on group files, the extraspecial eigenvalue lab and the prime
// counting bound check.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fitlab/fitlab.hpp"

using namespace fitlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int run_verify_corpus(const std::string& profile, std::uint64_t seed, unsigned jobs) {
  const auto corpus = corpus_generate(parse_profile(profile), seed);
  const auto records = verify_corpus(corpus, jobs);
  std::cout << emit_report(records);
  return report_exit_code(records);
}

int run_fitting(const std::string& path) {
  const GroupFile file = load_group_file(path);
  const FiniteGroup G = file.spec.build();
  const FittingResult r = fitting_height(G);
  std::cout << "order=" << G.order() << " height=" << r.height << "\n";
  for (std::size_t i = 0; i < r.chain.terms.size(); ++i)
    std::cout << "TERM index=" << i << " order=" << r.chain.terms[i].order() << "\n";
  return 0;
}

int run_sigma(const std::string& poly, std::optional<std::uint64_t> bound, std::optional<std::uint64_t> prime) {
  if (!bound && !prime) throw std::invalid_argument("sigma: give --bound, --check-prime or both");
  const SigmaContext ctx = build_context(IntPoly::parse(poly));
  std::vector<std::uint64_t> primes;
  if (prime) {
    primes.push_back(*prime);
  } else {
    primes = numth::primes_up_to(*bound);
  }
  for (auto p : primes) {
    const SigmaVerdict v = sigma_decide(ctx, p);
    std::cout << "p=" << p << " in_sigma=" << (v.member ? "true" : "false") << " reason=" << to_string(v.reason) << "\n";
  }
  return 0;
}

int run_identity_check(const std::string& path, const std::string& poly, const std::string& mode_text, bool ordered) {
  const GroupFile file = load_group_file(path);
  if (file.auto_images.empty()) throw std::invalid_argument("identity-check: group file has no auto: lines");
  const FiniteGroup G = file.spec.build();
  const Automorphism phi = Automorphism::from_perm_images(G, file.auto_images);
  const IntPoly f = IntPoly::parse(poly);
  const SectionMode mode = parse_section_mode(mode_text);
  const EaVerdict ea = ea_identity_holds(G, phi, f, mode);
  for (const auto& s : ea.sections)
    std::cout << "SECTION p=" << s.p << " dim=" << s.dim << " result=" << to_string(s.result) << "\n";
  std::cout << "IDENTITY kind=elementary-abelian mode=" << to_string(mode) << " result=" << verdict(ea.holds) << "\n";
  bool ok = ea.holds;
  if (ordered) {
    const OrderedVerdict ov = ordered_identity_holds(G, phi, f);
    std::cout << "IDENTITY kind=ordered result=" << verdict(ov.holds);
    if (!ov.holds) std::cout << " witness=" << format_cycles(G.element(*ov.witness));
    std::cout << "\n";
    ok = ok && ov.holds;
  }
  return ok ? 0 : kExitFail;
}

int run_hh_lab(const std::string& config, std::uint64_t q) {
  std::vector<std::uint64_t> v;
  std::stringstream ss(config);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    v.push_back(std::stoull(tok, &used));
    if (used != tok.size()) throw std::invalid_argument("hh-lab: malformed --config '" + config + "'");
  }
  if (v.size() != 4) throw std::invalid_argument("hh-lab: --config needs r,t,p,m");
  const ExtraspecialRep rep = build_extraspecial_rep(v[0], v[1], v[2], v[3], q);
  const EigenvalueBoundVerdict e = verify_eigenvalue_bound(rep);
  std::cout << "HH config=" << config << " char=" << q << " order=" << rep.group_order << " dim=" << rep.eta.rows()
            << "\n";
  std::cout << "ELL value=" << e.ell << " bound=" << e.bound << " result=" << verdict(e.ell >= e.bound) << "\n";
  std::cout << "MINPOLY degree=" << e.minpoly_degree << " bound=" << e.bound
            << " result=" << verdict(e.minpoly_degree >= e.bound) << "\n";
  std::cout << "COUNTING lhs=" << e.counting_lhs << " rhs=" << e.counting_rhs
            << " result=" << verdict(e.counting_lhs == e.counting_rhs) << "\n";
  return e.holds() ? 0 : kExitFail;
}

int run_pi_check(std::uint64_t bound) {
  const numth::PiBoundCheck r = numth::rosser_schoenfeld_check(bound);
  std::cout << "PICHECK bound=" << bound << " checked=" << r.checked << " violations=" << r.violations.size()
            << " undecided=" << r.undecided.size() << " result=" << verdict(r.ok()) << "\n";
  for (auto x : r.violations) std::cout << "VIOLATION x=" << x << "\n";
  for (auto x : r.undecided) std::cout << "UNDECIDED x=" << x << "\n";
  return r.ok() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fitlab: Fitting height bounds for groups with polynomial automorphism identities"};
  app.require_subcommand(1);

  std::string profile;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  auto* corpus = app.add_subcommand("verify-corpus", "Verify every check on a builtin corpus");
  corpus->add_option("--profile", profile, "smoke, standard or extended")->required();
  corpus->add_option("--seed", seed, "Seed for the automorphism subsample");
  corpus->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string group_path;
  auto* fitting = app.add_subcommand("fitting", "Fitting height and series of a group file");
  fitting->add_option("--group", group_path, "Group file")->required();

  std::string poly;
  std::optional<std::uint64_t> bound, check_prime;
  auto* sigma = app.add_subcommand("sigma", "Membership in the forbidden prime set of f");
  sigma->add_option("--poly", poly, "Integer polynomial, e.g. \"x - 2\"")->required();
  sigma->add_option("--bound", bound, "Report every prime up to B");
  sigma->add_option("--check-prime", check_prime, "Report a single prime");

  std::string mode = "canonical";
  bool ordered = false;
  auto* identity = app.add_subcommand("identity-check", "Check f(phi) = 0 on characteristic sections");
  identity->add_option("--group", group_path, "Group file with auto: lines")->required();
  identity->add_option("--poly", poly, "Integer polynomial")->required();
  identity->add_option("--mode", mode, "canonical or exhaustive");
  identity->add_flag("--ordered", ordered, "Also check the ordered identity on G");

  std::string config;
  std::uint64_t q = 0;
  auto* hh = app.add_subcommand("hh-lab", "Eigenvalue count on an extraspecial module");
  hh->add_option("--config", config, "r,t,p,m")->required();
  hh->add_option("--char", q, "Field characteristic")->required();

  std::uint64_t pi_bound = 0;
  auto* numth_cmd = app.add_subcommand("numth", "Number theory checks");
  numth_cmd->require_subcommand(1);
  auto* pi = numth_cmd->add_subcommand("pi-check", "Certified check of pi(x) < 1.25506 x / ln x");
  pi->add_option("--bound", pi_bound, "Largest x")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*corpus) return run_verify_corpus(profile, seed, jobs);
    if (*fitting) return run_fitting(group_path);
    if (*sigma) return run_sigma(poly, bound, check_prime);
    if (*identity) return run_identity_check(group_path, poly, mode, ordered);
    if (*hh) return run_hh_lab(config, q);
    if (*pi) return run_pi_check(pi_bound);
  } catch (const TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
