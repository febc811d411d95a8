// Copyright 2026 The Silca Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: key generation, cache banks, bulk encryption of a
// CSV column, verification, benchmarks and capacity planning.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "silca/cache/cache_bank.h"
#include "silca/common/error.h"
#include "silca/common/random.h"
#include "silca/he/params.h"
#include "silca/he/serialize.h"
#include "silca/planner/planner.h"
#include "silca/ring/modarith.h"
#include "silca/rlwe/factory.h"
#include "silca/workbench/bench.h"
#include "silca/workbench/dataset.h"

namespace fs = std::filesystem;

namespace silca {
namespace {

constexpr const char* kParamsFile = "params.txt";
constexpr const char* kPublicKeyFile = "public.key";
constexpr const char* kSecretKeyFile = "secret.key";
constexpr const char* kCiphertextFile = "ciphertexts.silc";
constexpr const char* kManifestFile = "manifest.json";

he::SchemeParams DefaultsFor(he::SchemeTag tag) {
  switch (tag) {
    case he::SchemeTag::kBgv:
      return he::DefaultBgvParams();
    case he::SchemeTag::kCkks:
      return he::DefaultCkksParams();
    case he::SchemeTag::kMock:
      return he::MockParams(65537);
  }
  throw UsageError("unknown scheme");
}

he::SchemeParams LoadChecked(const fs::path& path, const std::string& scheme) {
  he::SchemeParams p = he::LoadParamsFile(path);
  if (p.scheme != he::ParseSchemeTag(scheme)) {
    throw UsageError("--scheme " + scheme + " does not match " + path.string() +
                     " (scheme=" + std::string(he::SchemeName(p.scheme)) + ")");
  }
  return p;
}

std::ifstream OpenIn(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  return in;
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

he::PublicKey LoadPublicKey(const fs::path& dir, const he::Backend& backend) {
  auto in = OpenIn(dir / kPublicKeyFile);
  return he::ReadPublicKey(in, backend);
}

he::SecretKey LoadSecretKey(const fs::path& dir, const he::Backend& backend) {
  auto in = OpenIn(dir / kSecretKeyFile);
  return he::ReadSecretKey(in, backend);
}

fs::path DirOf(const fs::path& file) {
  const fs::path parent = file.parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

bool IsIntegerScheme(const he::SchemeParams& p) {
  return p.scheme == he::SchemeTag::kBgv ||
         (p.scheme == he::SchemeTag::kMock && p.plaintext_modulus != 0);
}

// ---- keygen ---------------------------------------------------------------

struct KeygenArgs {
  std::string scheme;
  fs::path params;
  fs::path out;
};

int Keygen(const KeygenArgs& a) {
  he::SchemeParams p;
  if (fs::exists(a.params)) {
    p = LoadChecked(a.params, a.scheme);
  } else {
    p = DefaultsFor(he::ParseSchemeTag(a.scheme));
    if (a.params.has_parent_path()) fs::create_directories(a.params.parent_path());
    he::SaveParamsFile(p, a.params);
    std::cerr << "wrote default parameters to " << a.params << "\n";
  }
  auto backend = rlwe::MakeBackend(p);
  const he::KeyPair keys = backend->KeyGen(RandomSource::Global().NextSeed());
  fs::create_directories(a.out);
  he::SaveParamsFile(p, a.out / kParamsFile);
  {
    auto out = OpenOut(a.out / kPublicKeyFile);
    he::WritePublicKey(out, keys.pub);
  }
  {
    auto out = OpenOut(a.out / kSecretKeyFile);
    he::WriteSecretKey(out, keys.secret);
  }
  fs::permissions(a.out / kSecretKeyFile, fs::perms::owner_read | fs::perms::owner_write,
                  fs::perm_options::replace);
  std::cout << "scheme " << he::SchemeName(p.scheme) << ", params digest "
            << he::DigestHex(he::ParamsDigest(p)) << "\n"
            << "keys written to " << a.out << "\n";
  return 0;
}

// ---- cache build ----------------------------------------------------------

struct CacheArgs {
  std::string scheme;
  fs::path params;
  std::uint64_t max_value = 0;
  std::size_t buffer_len = 0;
  unsigned workers = 1;
  fs::path out;
  bool export_secrets = false;
  std::optional<fs::path> keys;
};

int CacheBuild(const CacheArgs& a) {
  const he::SchemeParams p = LoadChecked(a.params, a.scheme);
  auto backend = rlwe::MakeBackend(p);
  const fs::path key_dir = a.keys.value_or(DirOf(a.params));
  const he::PublicKey pk = LoadPublicKey(key_dir, *backend);
  const cache::Mode mode = IsIntegerScheme(p) ? cache::Mode::kSilcaZ : cache::Mode::kSilca;
  if (mode == cache::Mode::kSilcaZ && a.max_value != p.plaintext_modulus) {
    throw UsageError("SilcaZ caches use N = plaintext_modulus (" +
                     std::to_string(p.plaintext_modulus) + "); got --max-value " +
                     std::to_string(a.max_value));
  }
  cache::BankConfig c;
  c.max_value = a.max_value;
  c.buffer_len = a.buffer_len;
  c.fill_workers = a.workers;
  c.refill = cache::RefillPolicy::kDisabled;
  auto bank = cache::CacheBank::Build(std::move(backend), pk, mode, c);
  if (!a.export_secrets) {
    std::cerr << "warning: the cache factors are secret and were NOT written; the "
                 "saved cache cannot be used for encryption. Pass --export-secrets "
                 "to include them.\n";
  }
  auto out = OpenOut(a.out);
  bank->Save(out, a.export_secrets);
  out.close();
  if (a.export_secrets) {
    fs::permissions(a.out, fs::perms::owner_read | fs::perms::owner_write,
                    fs::perm_options::replace);
  }
  std::cout << (mode == cache::Mode::kSilcaZ ? "silcaz" : "silca") << " cache: B="
            << bank->buffer_count() << " L=" << bank->buffer_len() << " ("
            << bank->buffer_count() * bank->buffer_len() << " ciphertexts), fill "
            << std::fixed << std::setprecision(3) << bank->fill_seconds() << " s with "
            << a.workers << " worker(s)\n";
  return 0;
}

// ---- encrypt --------------------------------------------------------------

struct EncryptArgs {
  std::string scheme;
  fs::path cache;
  fs::path input;
  std::string column;
  fs::path out;
  std::optional<fs::path> params;
  std::optional<fs::path> keys;
};

int Encrypt(const EncryptArgs& a) {
  const fs::path key_dir = a.keys.value_or(DirOf(a.cache));
  const he::SchemeParams p =
      LoadChecked(a.params.value_or(key_dir / kParamsFile), a.scheme);
  auto backend = rlwe::MakeBackend(p);
  const he::PublicKey pk = LoadPublicKey(key_dir, *backend);
  cache::BankConfig c;
  c.refill = cache::RefillPolicy::kBackground;
  auto in = OpenIn(a.cache);
  auto bank = cache::CacheBank::Load(in, backend, pk, c);
  if (bank->redacted()) {
    throw UsageError("cache " + a.cache.string() +
                     " has no factors (built without --export-secrets)");
  }
  const bool integer = bank->mode() == cache::Mode::kSilcaZ;
  const auto column = workbench::LoadCsvColumn(
      a.input, a.column,
      integer ? workbench::ValueType::kInteger : workbench::ValueType::kReal);
  fs::create_directories(a.out);
  auto out = OpenOut(a.out / kCiphertextFile);
  std::vector<double> latencies;
  for (double v : column.values) {
    cache::EncryptOutcome o;
    if (integer) {
      if (v < 0) throw DomainError("negative value in integer column");
      o = bank->SilcazEncrypt(static_cast<std::uint64_t>(v));
    } else {
      o = bank->SilcaEncrypt(v);
    }
    latencies.push_back(std::chrono::duration<double>(o.latency).count());
    he::WriteCiphertext(out, o.ciphertext);
  }
  bank->Drain();
  out.close();
  if (!out) throw Error("write failed");
  nlohmann::ordered_json m;
  m["scheme"] = he::SchemeName(p.scheme);
  m["mode"] = integer ? "silcaz" : "silca";
  m["input"] = a.input.string();
  m["column"] = a.column;
  m["count"] = column.values.size();
  m["skipped_rows"] = column.skipped_rows;
  m["params_digest"] = he::DigestHex(he::ParamsDigest(p));
  m["fallbacks"] = bank->Stats().fallbacks;
  {
    auto mf = OpenOut(a.out / kManifestFile);
    mf << m.dump(2) << "\n";
  }
  std::sort(latencies.begin(), latencies.end());
  std::cout << "encrypted " << column.values.size() << " value(s) to "
            << (a.out / kCiphertextFile) << "\n";
  if (!column.skipped_rows.empty()) {
    std::cout << "skipped " << column.skipped_rows.size() << " malformed row(s)\n";
  }
  if (!latencies.empty()) {
    std::cout << "median online latency " << std::scientific << std::setprecision(3)
              << latencies[latencies.size() / 2] << " s\n";
  }
  return 0;
}

// ---- decrypt-verify -------------------------------------------------------

struct VerifyArgs {
  std::string scheme;
  fs::path keys;
  fs::path in;
  fs::path expect;
  std::optional<std::string> column;
};

int DecryptVerify(const VerifyArgs& a) {
  const he::SchemeParams p = LoadChecked(a.keys / kParamsFile, a.scheme);
  auto backend = rlwe::MakeBackend(p);
  const he::SecretKey sk = LoadSecretKey(a.keys, *backend);
  std::string column;
  if (a.column) {
    column = *a.column;
  } else {
    auto mf = OpenIn(a.in / kManifestFile);
    column = nlohmann::json::parse(mf).at("column").get<std::string>();
  }
  const bool integer = IsIntegerScheme(p);
  const auto expected = workbench::LoadCsvColumn(
      a.expect, column, integer ? workbench::ValueType::kInteger : workbench::ValueType::kReal);
  auto in = OpenIn(a.in / kCiphertextFile);
  std::size_t checked = 0, mismatches = 0;
  for (double want : expected.values) {
    if (in.peek() == std::char_traits<char>::eof()) break;
    const he::Ciphertext c = backend->ReadCiphertext(in);
    bool ok;
    double got;
    if (integer) {
      got = static_cast<double>(he::AsInteger(backend)->Decrypt(sk, c));
      ok = got == want;
    } else {
      auto rb = he::AsReal(backend);
      got = rb->Decrypt(sk, c);
      ok = std::abs(got - want) <= std::max(rb->Tolerance(want), 1e-3 * std::abs(want));
    }
    ++checked;
    if (!ok) {
      if (++mismatches <= 10) {
        std::cout << "mismatch at value " << checked << ": expected " << std::setprecision(17)
                  << want << ", decrypted " << got << "\n";
      }
    }
  }
  const bool extra = in.peek() != std::char_traits<char>::eof();
  const bool short_input = checked < expected.values.size();
  std::cout << "verified " << checked << " value(s): " << checked - mismatches
            << " match, " << mismatches << " mismatch\n";
  if (extra) std::cout << "error: more ciphertexts than expected values\n";
  if (short_input) std::cout << "error: fewer ciphertexts than expected values\n";
  const bool pass = mismatches == 0 && !extra && !short_input;
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string schemes = "vanilla,rache,silca,silcaz";
  std::string dataset;
  std::size_t slice = 10000;
  unsigned workers = 1;
  fs::path report;
  std::string format = "csv";
  std::string backend = "lattice";
  std::uint64_t data_seed = 1;
};

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int Bench(const BenchArgs& a) {
  std::vector<double> values;
  workbench::ValueType type;
  std::string name;
  if (a.dataset.rfind("csv:", 0) == 0) {
    const std::string rest = a.dataset.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw UsageError("expected csv:PATH:COLUMN");
    const fs::path path = rest.substr(0, colon);
    const std::string col = rest.substr(colon + 1);
    auto column = workbench::LoadCsvColumn(path, col, workbench::ValueType::kReal);
    values = std::move(column.values);
    type = std::all_of(values.begin(), values.end(),
                       [](double v) { return v >= 0 && v == std::floor(v); })
               ? workbench::ValueType::kInteger
               : workbench::ValueType::kReal;
    name = path.stem().string() + ":" + col;
    if (!column.skipped_rows.empty()) {
      std::cerr << "skipped " << column.skipped_rows.size() << " malformed row(s)\n";
    }
  } else {
    const auto& spec = workbench::FindDataset(a.dataset);
    values = workbench::SynthDataset(spec, a.data_seed);
    type = spec.type;
    name = spec.name;
  }
  workbench::BenchOptions o;
  o.schemes = SplitList(a.schemes);
  o.slice = a.slice;
  o.workers = a.workers;
  if (a.backend == "mock") {
    o.backend = workbench::BackendKind::kMock;
  } else if (a.backend != "lattice") {
    throw UsageError("--backend must be lattice or mock");
  }
  const auto records = workbench::RunBenchmark(name, values, type, o);
  workbench::EmitReport(records, a.report, a.format);
  std::cout << std::left << std::setw(8) << "scheme" << std::setw(7) << "backend"
            << std::right << std::setw(8) << "n" << std::setw(14) << "median_us"
            << std::setw(12) << "offline_s" << std::setw(10) << "fallback"
            << "  status\n";
  for (const auto& r : records) {
    std::cout << std::left << std::setw(8) << r.scheme << std::setw(7) << r.backend
              << std::right << std::setw(8) << r.n << std::setw(14) << std::fixed
              << std::setprecision(2) << r.median_online_seconds * 1e6 << std::setw(12)
              << std::setprecision(3) << r.offline_seconds << std::setw(10) << r.fallbacks
              << "  " << r.status << "\n";
  }
  std::cout << "report written to " << a.report << "\n";
  const bool ok = std::all_of(records.begin(), records.end(), [](const auto& r) {
    return r.status == "ok" || r.status.rfind("skipped", 0) == 0;
  });
  return ok ? 0 : 1;
}

// ---- plan / measure-phi ---------------------------------------------------

struct PlanArgs {
  double phi = 0;
  std::string n;
  std::uint64_t max_value = 0;
  std::optional<std::uint64_t> buffer_len;
  std::optional<std::uint64_t> ct_size;
};

int Plan(const PlanArgs& a) {
  planner::PlanInput in;
  in.phi = a.phi;
  if (in.n.set_str(a.n, 10) != 0) throw UsageError("--n must be a decimal integer");
  in.max_value = a.max_value;
  in.buffer_len = a.buffer_len;
  in.ct_size = a.ct_size;
  std::cout << planner::PlanToJson(planner::MakePlan(in)) << "\n";
  return 0;
}

struct PhiArgs {
  std::string scheme;
  std::optional<fs::path> params;
  int iters = 1000;
};

int MeasurePhi(const PhiArgs& a) {
  const he::SchemeParams p = a.params ? LoadChecked(*a.params, a.scheme)
                                      : DefaultsFor(he::ParseSchemeTag(a.scheme));
  auto backend = rlwe::MakeBackend(p);
  const auto keys = backend->KeyGen(RandomSource::Global().NextSeed());
  const auto m = planner::MeasurePhi(*backend, keys.pub, a.iters);
  nlohmann::ordered_json j;
  j["scheme"] = he::SchemeName(p.scheme);
  j["ring_dim"] = p.ring_dim;
  j["iterations"] = m.iterations;
  j["median_enc_s"] = m.median_enc_seconds;
  j["median_mul_plain_s"] = m.median_mul_plain_seconds;
  j["phi"] = m.phi;
  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace
}  // namespace silca

int main(int argc, char** argv) {
  using namespace silca;
  CLI::App app{"Singular-caching homomorphic encryption toolkit"};
  app.require_subcommand(1);
  const std::vector<std::string> schemes = {"mock", "bgv", "ckks"};

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a key pair (and default params)");
  keygen->add_option("--scheme", kg.scheme)->required()->check(CLI::IsMember(schemes));
  keygen->add_option("--params", kg.params, "Parameter file; created if missing")->required();
  keygen->add_option("--out", kg.out, "Key directory")->required();

  CacheArgs ca;
  auto* cache = app.add_subcommand("cache", "Cache bank operations");
  cache->require_subcommand(1);
  auto* build = cache->add_subcommand("build", "Precompute a cache bank");
  build->add_option("--scheme", ca.scheme)->required()->check(CLI::IsMember(schemes));
  build->add_option("--params", ca.params)->required()->check(CLI::ExistingFile);
  build->add_option("--max-value", ca.max_value, "N")->required();
  build->add_option("--buffer-len", ca.buffer_len, "L")->required()->check(CLI::PositiveNumber);
  build->add_option("--workers", ca.workers)->default_val(1u)->check(CLI::PositiveNumber);
  build->add_option("--out", ca.out)->required();
  build->add_flag("--export-secrets", ca.export_secrets,
                  "Write the secret per-buffer factors (needed to encrypt)");
  build->add_option("--keys", ca.keys, "Key directory (default: the params file's)");

  EncryptArgs en;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a CSV column with a cache bank");
  encrypt->add_option("--scheme", en.scheme)->required()->check(CLI::IsMember(schemes));
  encrypt->add_option("--cache", en.cache)->required()->check(CLI::ExistingFile);
  encrypt->add_option("--input", en.input)->required();
  encrypt->add_option("--column", en.column)->required();
  encrypt->add_option("--out", en.out)->required();
  encrypt->add_option("--params", en.params);
  encrypt->add_option("--keys", en.keys, "Key directory (default: the cache file's)");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("decrypt-verify", "Decrypt and compare with a CSV");
  verify->add_option("--scheme", ve.scheme)->required()->check(CLI::IsMember(schemes));
  verify->add_option("--keys", ve.keys)->required()->check(CLI::ExistingDirectory);
  verify->add_option("--in", ve.in)->required()->check(CLI::ExistingDirectory);
  verify->add_option("--expect", ve.expect)->required();
  verify->add_option("--column", ve.column, "Default: the column recorded at encryption");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Run the encryption benchmark");
  bench->add_option("--schemes", be.schemes)->default_val(be.schemes);
  bench->add_option("--dataset", be.dataset,
                    "covid19|bitcoin|hg38|p_size|p_retailprice|o_totalprice|"
                    "l_extendedprice|csv:PATH:COL")
      ->required();
  bench->add_option("--slice", be.slice, "Values per scheme; 0 for all")->default_val(10000);
  bench->add_option("--workers", be.workers)->default_val(1u)->check(CLI::PositiveNumber);
  bench->add_option("--report", be.report)->required();
  bench->add_option("--format", be.format)->default_val("csv")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--backend", be.backend)->default_val("lattice");
  bench->add_option("--data-seed", be.data_seed, "Seed for synthetic datasets")->default_val(1);

  PlanArgs pl;
  auto* plan = app.add_subcommand("plan", "Cache capacity bounds (JSON)");
  plan->add_option("--phi", pl.phi)->required();
  plan->add_option("--n", pl.n)->required();
  plan->add_option("--max-value", pl.max_value)->required();
  plan->add_option("--buffer-len", pl.buffer_len);
  plan->add_option("--ct-size", pl.ct_size);

  PhiArgs ph;
  auto* phi = app.add_subcommand("measure-phi", "Measure enc / mul-plain latency ratio");
  phi->add_option("--scheme", ph.scheme)->required()->check(CLI::IsMember(schemes));
  phi->add_option("--params", ph.params, "Default: built-in parameters");
  phi->add_option("--iters", ph.iters)->default_val(1000);

  CLI11_PARSE(app, argc, argv);

  if (RandomSource::Global().deterministic()) {
    std::cerr << "note: SILCA_SEED is set; randomness is deterministic (testing only)\n";
  }
  try {
    if (*keygen) return Keygen(kg);
    if (*build) return CacheBuild(ca);
    if (*encrypt) return Encrypt(en);
    if (*verify) return DecryptVerify(ve);
    if (*bench) return Bench(be);
    if (*plan) return Plan(pl);
    if (*phi) return MeasurePhi(ph);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
