// Command-line front end: field parameter generation, dealing with any of the
// supported verification schemes, share verification, cheater detection and
// identification, storage-rate tables, and a collusion-attack demonstration.
//
// Exit codes are a stable contract:
//   0 success / accept / consistent
//   1 reject / cheaters found / attack inconclusive
//   2 invalid flags, malformed documents, contract violations
//   3 safe-prime search budget exhausted (gen-params)
//   4 mid-half collision budget exhausted (deal)
//   5 no strict-majority secret (identify)

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vsst/analysis.hpp"
#include "vsst/coherence.hpp"
#include "vsst/documents.hpp"
#include "vsst/feldman.hpp"
#include "vsst/hashing.hpp"
#include "vsst/numtheory.hpp"
#include "vsst/shamir.hpp"
#include "vsst/vss.hpp"

namespace fs = std::filesystem;
using namespace vsst;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

// ---- gen-params ----

struct GenParamsArgs {
    unsigned bits = 0;
    std::string above_hex;
    unsigned mersenne = 0;
    std::uint64_t max_tested = 0;
    unsigned min_weight = 0;
    std::string out_dir;
};

int run_gen_params(const GenParamsArgs& a) {
    const int given = (a.bits > 0) + (!a.above_hex.empty()) + (a.mersenne > 0);
    if (given != 1) {
        std::cerr << "choose exactly one of --bits, --safe-prime-above, --mersenne\n";
        return 2;
    }
    FieldPtr field;
    try {
        if (a.mersenne > 0) {
            field = mersenne_field(a.mersenne).spec;
        } else {
            const SafePrimeSearchOptions opts{a.max_tested, a.min_weight};
            const BigNat floor =
                a.bits > 0 ? BigNat(1) << a.bits : from_hex(a.above_hex);
            field = FieldSpec::prime(next_safe_prime(floor, opts).p);
        }
    } catch (const SearchBudgetExhausted& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    const std::string doc = render_params_document(field);
    if (a.out_dir.empty()) {
        std::cout << doc;
    } else {
        fs::create_directories(a.out_dir);
        write_file(fs::path(a.out_dir) / "params.txt", doc);
    }
    return 0;
}

// ---- deal ----

struct DealArgs {
    std::string secret_hex;
    std::uint32_t t = 0;
    std::uint32_t n = 0;
    std::string scheme;
    std::string field_prime_hex;
    unsigned field_binary = 0;
    std::string verify_field = "safe-prime";
    std::uint64_t seed = 0;
    std::string out_dir;
    bool insecure_combined = false;
};

FieldChoice parse_field_choice(const std::string& tag) {
    if (tag == "safe-prime") return FieldChoice::next_safe_prime_of_bitsize;
    if (tag == "prime") return FieldChoice::next_prime_of_value;
    if (tag == "binary") return FieldChoice::binary_of_bitsize;
    if (tag == "mersenne") return FieldChoice::mersenne;
    throw BadParams("unknown verification field choice '" + tag + "'");
}

int run_deal(const DealArgs& a) {
    try {
        if (a.out_dir.empty()) throw BadParams("--out DIR is required");
        if ((a.field_prime_hex.empty()) == (a.field_binary == 0))
            throw BadParams("choose exactly one of --field-prime, --field-binary");
        const FieldPtr field = a.field_binary > 0
                                   ? FieldSpec::binary(a.field_binary)
                                   : FieldSpec::prime(from_hex(a.field_prime_hex));
        const BigNat secret = from_hex(a.secret_hex);
        if (secret >= field->size())
            throw BadParams("secret is not an element of the scheme field");
        const FieldChoice choice = parse_field_choice(a.verify_field);
        const std::size_t bits = field_element_bits(field);

        Rng rng(a.seed);
        std::vector<std::string> bundle_docs;  // position 0 = public document
        std::vector<BigNat> values;

        if (a.scheme == "feldman") {
            if (field->kind() != FieldKind::prime)
                throw BadParams("feldman commitments need a prime scheme field");
            if (a.t < 1 || a.t > a.n) throw BadThreshold("need 1 <= t <= n");
            const Polynomial poly =
                random_polynomial(a.t - 1, FieldElement(field, secret), rng);
            for (std::uint32_t i = 1; i <= a.n; ++i)
                values.push_back(poly.evaluate_value(i));
            const FeldmanParams group = feldman_generate_params(field->modulus(), rng);
            bundle_docs.push_back(render_feldman_document(feldman_commit(
                poly.coefficients_padded(a.t), group.p, group.q, group.generator)));
        } else {
            const ShareSet dealt = deal(FieldElement(field, secret), a.t, a.n, rng);
            for (const Share& s : dealt.shares) values.push_back(s.value.value());

            if (a.scheme == "hash") {
                bundle_docs.push_back(render_hash_document(hash_commit(secret, values)));
            } else if (a.scheme == "pow") {
                bundle_docs.push_back(render_bundle_document(
                    vss_pow_deal(values, choice, rng, field->size())));
            } else if (a.scheme == "ssp") {
                // colliding mid halves call for fresh shares, not a hard stop
                for (int attempt = 0;; ++attempt) {
                    try {
                        bundle_docs.push_back(
                            render_bundle_document(vss_ssp_deal(values, bits, choice)));
                        break;
                    } catch (const MidHalfCollision&) {
                        if (attempt >= 63) return 4;
                        values.clear();
                        const ShareSet redeal = deal(FieldElement(field, secret), a.t, a.n, rng);
                        for (const Share& s : redeal.shares) values.push_back(s.value.value());
                    }
                }
            } else if (a.scheme == "exp") {
                const FieldPtr vf = choose_verification_field(choice, field->size(), bits);
                bundle_docs.emplace_back();  // no public bundle
                for (const VerificationBundle& b :
                     vss_exp_deal(values, vf, rng, field->size()))
                    bundle_docs.push_back(render_bundle_document(b));
            } else if (a.scheme == "exp-ssp") {
                const std::size_t w = (bits + 1) / 2;
                const FieldPtr vf =
                    choose_verification_field(choice, BigNat(1) << w, w);
                for (int attempt = 0;; ++attempt) {
                    try {
                        bundle_docs.emplace_back();
                        for (const VerificationBundle& b :
                             vss_exp_ssp_deal(values, w, vf, rng))
                            bundle_docs.push_back(render_bundle_document(b));
                        break;
                    } catch (const MidHalfCollision&) {
                        bundle_docs.clear();
                        if (attempt >= 63) return 4;
                        values.clear();
                        const ShareSet redeal = deal(FieldElement(field, secret), a.t, a.n, rng);
                        for (const Share& s : redeal.shares) values.push_back(s.value.value());
                    }
                }
            } else {
                throw BadParams("unknown scheme '" + a.scheme + "'");
            }
        }

        fs::create_directories(a.out_dir);
        const fs::path dir(a.out_dir);
        write_file(dir / "params.txt", render_params_document(field));
        for (std::uint32_t i = 1; i <= a.n; ++i) {
            ShareDocument sd{field, a.t, a.n, {{i, values[i - 1]}}};
            write_file(dir / ("share_" + std::to_string(i) + ".txt"),
                       render_share_document(sd));
        }
        if (bundle_docs.size() == 1) {
            write_file(dir / "bundle_0.txt", bundle_docs[0]);
        } else {
            for (std::size_t j = 1; j < bundle_docs.size(); ++j)
                write_file(dir / ("bundle_" + std::to_string(j) + ".txt"),
                           bundle_docs[j]);
        }
        if (a.insecure_combined) {
            ShareDocument all{field, a.t, a.n, {}};
            for (std::uint32_t i = 1; i <= a.n; ++i) all.shares.emplace_back(i, values[i - 1]);
            write_file(dir / "shares.txt", render_share_document(all));
            std::string joined;
            for (const std::string& doc : bundle_docs)
                if (!doc.empty()) joined += doc + "\n";
            write_file(dir / "bundles.txt", joined);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

// ---- verify ----

int run_verify(const std::string& bundle_file, const std::string& share_file) {
    try {
        const std::string bundle_text = read_file(bundle_file);
        const ShareDocument shares = parse_share_document(read_file(share_file));
        const std::string kind = document_kind(bundle_text);

        auto check = [&](std::uint32_t index, const BigNat& value) {
            if (kind == "bundle")
                return bundle_verify(parse_bundle_document(bundle_text), index, value);
            if (kind == "feldman-params")
                return feldman_verify(index, value, parse_feldman_document(bundle_text));
            if (kind == "hash-commitments")
                return hash_verify_share(index, value, parse_hash_document(bundle_text));
            throw ParseError("'" + kind + "' is not a verification document");
        };

        for (const auto& [index, value] : shares.shares) {
            if (!check(index, value)) {
                std::cout << "REJECT index=" << index << "\n";
                return 1;
            }
        }
        std::cout << "ACCEPT\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

// ---- detect / identify ----

std::vector<Share> load_shares(const std::vector<std::string>& files) {
    FieldPtr field;
    std::vector<Share> out;
    for (const std::string& path : files) {
        const ShareDocument doc = parse_share_document(read_file(path));
        if (!field) field = doc.field;
        else if (!same_field(field, doc.field))
            throw ParseError("share files disagree on the field");
        for (const auto& [index, value] : doc.shares)
            out.push_back({index, FieldElement(field, value)});
    }
    return out;
}

void print_report(const CheaterReport& r, const std::string& verdict, bool list_cheaters) {
    std::cout << "coalition: " << r.coalition << "\n";
    std::cout << "threshold: " << r.threshold << "\n";
    for (const auto& [secret, entry] : r.histogram)
        std::cout << "histogram: secret=" << to_hex(secret) << " count=" << entry.count
                  << "\n";
    std::cout << "verdict: " << verdict << "\n";
    if (r.majority_secret)
        std::cout << "majority_secret: " << to_hex(*r.majority_secret) << "\n";
    if (list_cheaters) {
        std::cout << "cheaters:";
        if (r.cheaters.empty()) std::cout << " none";
        for (std::uint32_t c : r.cheaters) std::cout << " " << c;
        std::cout << "\n";
    }
    const auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::cout << "bounds independent: detection=" << yn(r.bounds_independent.detection_ok)
              << " identification=" << yn(r.bounds_independent.identification_ok) << "\n";
    std::cout << "bounds organized: detection=" << yn(r.bounds_organized.detection_ok)
              << " identification=" << yn(r.bounds_organized.identification_ok) << "\n";
}

int run_detect(const std::vector<std::string>& files, std::uint32_t t, bool do_identify) {
    try {
        const std::vector<Share> shares = load_shares(files);
        CheaterReport report = detect(shares, t);
        if (report.consistent) {
            print_report(report, "consistent", false);
            return 0;
        }
        if (!do_identify) {
            print_report(report, "inconsistent", false);
            return 1;
        }
        try {
            report = identify(report, shares, t);
        } catch (const NoMajority&) {
            print_report(report, "no-majority", false);
            return 5;
        }
        print_report(report, "cheaters-identified", true);
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

// ---- rates ----

int run_rates(std::size_t bsq, std::uint32_t t, std::uint32_t n, std::size_t bsp) {
    try {
        const RateReport rows[] = {
            rate_report(RateScheme::feldman, bsq, t, n, bsp),
            rate_report(RateScheme::vss_exp, bsq, t, n),
            rate_report(RateScheme::vss_exp_ssp, bsq, t, n),
        };
        const char* names[] = {"feldman", "vss-exp", "vss-exp-ssp"};
        std::cout << std::left << std::setw(13) << "scheme" << std::setw(8) << "bs_p"
                  << std::setw(12) << "total_bits" << std::setw(16) << "committed_bits"
                  << std::setw(10) << "rate" << "K\n";
        for (int i = 0; i < 3; ++i) {
            std::cout << std::left << std::setw(13) << names[i] << std::setw(8)
                      << rows[i].bs_p << std::setw(12) << rows[i].total_bits.str()
                      << std::setw(16) << rows[i].committed_bits.str() << std::setw(10)
                      << format_rational(rows[i].rate) << format_rational(rows[i].k)
                      << "\n";
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

// ---- attack-demo ----

struct AttackArgs {
    std::string variant = "pow-priv";
    std::uint64_t seed = 0;
    std::string field_prime_hex = "fb";  // GF(251)
    std::uint32_t n = 3;
    std::vector<std::string> bundle_files;
};

int run_attack_demo(const AttackArgs& a) {
    try {
        const VssScheme variant = scheme_from_name(a.variant);
        if (variant != VssScheme::pow_priv && variant != VssScheme::ssp_priv)
            throw BadParams("--variant must be pow-priv or ssp-priv");

        std::vector<VerificationBundle> bundles;
        bool demo = a.bundle_files.empty();
        BigNat actual;

        if (demo) {
            if (a.n < 2) throw BadParams("need at least two shareholders");
            Rng rng(a.seed);
            std::vector<BigNat> exponents;
            std::set<BigNat> seen_u;
            while (exponents.size() < a.n) {
                BigNat u = random_range(2, 32, rng);
                if (seen_u.insert(u).second) exponents.push_back(u);
            }
            std::vector<BigNat> values;
            if (variant == VssScheme::pow_priv) {
                const FieldPtr field = FieldSpec::prime(from_hex(a.field_prime_hex));
                std::set<BigNat> seen_s;
                while (values.size() < a.n) {
                    BigNat s = random_range(1, field->size() - 1, rng);
                    if (seen_s.insert(s).second) values.push_back(s);
                }
                bundles = vss_private_deal(values, exponents, variant,
                                           FieldChoice::next_prime_of_value, 0,
                                           field->size());
            } else {
                // equal halves keep the difference polynomials aligned with
                // the mid values, which is what this construction needs
                const std::size_t w = 4;
                std::set<BigNat> seen_m;
                while (values.size() < a.n) {
                    BigNat m = random_range(1, (BigNat(1) << w) - 1, rng);
                    if (seen_m.insert(m).second) values.push_back((m << w) | m);
                }
                bundles = vss_private_deal(values, exponents, variant,
                                           FieldChoice::next_prime_of_value, 2 * w, 0);
            }
            actual = values.back();
            bundles.pop_back();  // colluders are 1..n-1; the last share is the prize
        } else {
            for (const std::string& path : a.bundle_files)
                bundles.push_back(parse_bundle_document(read_file(path)));
        }

        std::cout << "variant: " << scheme_name(variant) << "\n";
        std::cout << "colluders: " << bundles.size() << "\n";
        std::cout << "exponents:";
        for (const VerificationBundle& b : bundles) std::cout << " " << b.base.str();
        std::cout << "\n";

        try {
            const GcdAttackResult result = gcd_collusion_attack(bundles, variant);
            std::cout << "gcd_degree: " << result.gcd.degree() << "\n";
            std::cout << "candidates:";
            for (const BigNat& c : result.candidates) std::cout << " " << to_hex(c);
            std::cout << "\n";
            if (demo) {
                std::cout << "actual: " << to_hex(actual) << "\n";
                const bool hit = std::find(result.candidates.begin(),
                                           result.candidates.end(),
                                           actual) != result.candidates.end();
                std::cout << "result: " << (hit ? "success" : "miss") << "\n";
                return hit ? 0 : 1;
            }
            return result.candidates.empty() ? 1 : 0;
        } catch (const TrivialGcd& e) {
            std::cout << "result: inconclusive (" << e.what() << ")\n";
            return 1;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifiable secret sharing toolkit"};
    app.require_subcommand(1);

    GenParamsArgs gp;
    CLI::App* gen = app.add_subcommand("gen-params", "generate field parameters");
    gen->add_option("--bits", gp.bits, "safe prime just above 2^N");
    gen->add_option("--safe-prime-above", gp.above_hex, "safe prime at or above HEX");
    gen->add_option("--mersenne", gp.mersenne, "binary field GF(2^E), E a Mersenne exponent");
    gen->add_option("--max-tested", gp.max_tested, "search budget (0 = unlimited)");
    gen->add_option("--min-weight", gp.min_weight, "required Hamming weight of p");
    gen->add_option("--out", gp.out_dir, "write params.txt into DIR instead of stdout");

    DealArgs dl;
    CLI::App* deal_cmd = app.add_subcommand("deal", "split a secret into verifiable shares");
    deal_cmd->add_option("--secret", dl.secret_hex, "secret value, hex")->required();
    deal_cmd->add_option("--t", dl.t, "reconstruction threshold")->required();
    deal_cmd->add_option("--n", dl.n, "number of shareholders")->required();
    deal_cmd->add_option("--scheme", dl.scheme, "exp|exp-ssp|pow|ssp|feldman|hash")
        ->required();
    deal_cmd->add_option("--field-prime", dl.field_prime_hex, "scheme field modulus, hex");
    deal_cmd->add_option("--field-binary", dl.field_binary, "scheme field GF(2^K) degree");
    deal_cmd->add_option("--verify-field", dl.verify_field,
                         "safe-prime|prime|binary|mersenne (default safe-prime)");
    deal_cmd->add_option("--seed", dl.seed, "rng seed (default 0)");
    deal_cmd->add_option("--out", dl.out_dir, "output directory")->required();
    deal_cmd->add_flag("--insecure-combined", dl.insecure_combined,
                       "also write shares.txt and bundles.txt holding everything");

    std::string verify_bundle, verify_share;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check shares against a bundle");
    verify_cmd->add_option("--bundle", verify_bundle, "verification document")->required();
    verify_cmd->add_option("--share", verify_share, "share document")->required();

    std::vector<std::string> detect_files;
    std::uint32_t detect_t = 0;
    CLI::App* detect_cmd = app.add_subcommand("detect", "cross-check shares for tampering");
    detect_cmd->add_option("--shares", detect_files, "share documents")->required();
    detect_cmd->add_option("--t", detect_t, "reconstruction threshold")->required();

    std::vector<std::string> identify_files;
    std::uint32_t identify_t = 0;
    CLI::App* identify_cmd = app.add_subcommand("identify", "name the tampered shares");
    identify_cmd->add_option("--shares", identify_files, "share documents")->required();
    identify_cmd->add_option("--t", identify_t, "reconstruction threshold")->required();

    std::size_t rates_bsq = 0, rates_bsp = 0;
    std::uint32_t rates_t = 0, rates_n = 0;
    CLI::App* rates_cmd = app.add_subcommand("rates", "storage-rate comparison table");
    rates_cmd->add_option("--bsq", rates_bsq, "secret field width in bits")->required();
    rates_cmd->add_option("--t", rates_t, "reconstruction threshold")->required();
    rates_cmd->add_option("--n", rates_n, "number of shareholders")->required();
    rates_cmd->add_option("--bsp", rates_bsp, "feldman modulus bits (default 2048)");

    AttackArgs at;
    CLI::App* attack_cmd =
        app.add_subcommand("attack-demo", "collusion attack on the private schemes");
    attack_cmd->add_option("--variant", at.variant, "pow-priv|ssp-priv");
    attack_cmd->add_option("--seed", at.seed, "rng seed (default 0)");
    attack_cmd->add_option("--field-prime", at.field_prime_hex,
                           "share field modulus, hex (pow-priv demo)");
    attack_cmd->add_option("--n", at.n, "shareholders in the demo instance");
    attack_cmd->add_option("--bundle", at.bundle_files,
                           "attack these bundle documents instead of a demo instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (gen->parsed()) return run_gen_params(gp);
    if (deal_cmd->parsed()) return run_deal(dl);
    if (verify_cmd->parsed()) return run_verify(verify_bundle, verify_share);
    if (detect_cmd->parsed()) return run_detect(detect_files, detect_t, false);
    if (identify_cmd->parsed()) return run_detect(identify_files, identify_t, true);
    if (rates_cmd->parsed()) return run_rates(rates_bsq, rates_t, rates_n, rates_bsp);
    if (attack_cmd->parsed()) return run_attack_demo(at);
    return 2;
}
