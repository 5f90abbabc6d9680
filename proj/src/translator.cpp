#include "bitext/translator.hpp"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "bitext/error.hpp"
#include "bitext/text.hpp"

namespace bitext {

namespace {

constexpr char kFieldSep = '\x1f';

// Stable per-token randomness: a hash of (seed, langs, sentence, index)
// mapped to [0, 1). Keeps noisy translation deterministic and order-free.
double noise_uniform(uint64_t seed, Lang src, Lang tgt,
                     const std::string& line, size_t token_index) {
  uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  for (unsigned char c : line) mix(c);
  mix(seed);
  mix(uint64_t(src) + 1);
  mix((uint64_t(tgt) + 1) << 8);
  mix(token_index + 0x9E3779B97F4A7C15ULL);
  // splitmix64 finalizer
  h += 0x9E3779B97F4A7C15ULL;
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
  h = h ^ (h >> 31);
  return double(h >> 11) * 0x1.0p-53;
}

std::string cache_key(Lang src, Lang tgt, const std::string& line) {
  std::string key(to_string(src));
  key += kFieldSep;
  key += to_string(tgt);
  key += kFieldSep;
  key += line;
  return key;
}

// Runs `command --src <s> --tgt <t>` feeding `lines` on stdin; expects
// exactly one output line per input line and exit status 0.
std::vector<std::string> run_exec_chunk(const std::string& command, Lang src,
                                        Lang tgt,
                                        const std::vector<std::string>& lines) {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    throw DataError("exec backend: pipe() failed");

  pid_t pid = fork();
  if (pid < 0) throw DataError("exec backend: fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::string src_s(to_string(src)), tgt_s(to_string(tgt));
    execl("/bin/sh", "sh", "-c",
          (command + " --src " + src_s + " --tgt " + tgt_s).c_str(),
          (char*)nullptr);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // Writer on its own thread so large batches cannot deadlock on full pipes.
  std::thread writer([&] {
    std::string payload;
    for (const auto& line : lines) {
      payload += line;
      payload += '\n';
    }
    size_t off = 0;
    while (off < payload.size()) {
      ssize_t n =
          write(in_pipe[1], payload.data() + off, payload.size() - off);
      if (n <= 0) break;
      off += size_t(n);
    }
    close(in_pipe[1]);
  });

  std::string output;
  char buf[4096];
  ssize_t n;
  while ((n = read(out_pipe[0], buf, sizeof buf)) > 0) output.append(buf, n);
  close(out_pipe[0]);
  writer.join();

  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw DataError("exec backend: process exited with status " +
                    std::to_string(WIFEXITED(status) ? WEXITSTATUS(status)
                                                     : -1));

  std::vector<std::string> out_lines;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out_lines.push_back(line);
  }
  if (out_lines.size() != lines.size())
    throw DataError("exec backend: line count mismatch: sent " +
                    std::to_string(lines.size()) + " lines, received " +
                    std::to_string(out_lines.size()));
  return out_lines;
}

}  // namespace

TranslatorSpec TranslatorSpec::identity_spec() { return {}; }

TranslatorSpec TranslatorSpec::dictionary_spec(std::string path, double noise,
                                               uint64_t seed) {
  TranslatorSpec spec;
  spec.kind = TranslatorKind::dictionary;
  spec.dictionary_path = std::move(path);
  spec.noise = noise;
  spec.seed = seed;
  return spec;
}

TranslatorSpec TranslatorSpec::exec_spec(std::string command) {
  TranslatorSpec spec;
  spec.kind = TranslatorKind::exec;
  spec.command = std::move(command);
  return spec;
}

TranslatorSpec TranslatorSpec::cached_spec(std::string path) {
  TranslatorSpec spec;
  spec.kind = TranslatorKind::cached;
  spec.cache_path = std::move(path);
  return spec;
}

Translator::Translator(TranslatorSpec spec) : spec_(std::move(spec)) {
  switch (spec_.kind) {
    case TranslatorKind::identity:
      break;
    case TranslatorKind::dictionary: {
      if (!spec_.dictionary_path)
        throw DataError("dictionary backend requires dictionary_path");
      std::ifstream in(*spec_.dictionary_path, std::ios::binary);
      if (!in)
        throw DataError("cannot open dictionary \"" + *spec_.dictionary_path +
                        "\"");
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        dictionary_[line.substr(0, tab)] = line.substr(tab + 1);
      }
      break;
    }
    case TranslatorKind::exec:
      if (!spec_.command) throw DataError("exec backend requires command");
      break;
    case TranslatorKind::cached: {
      if (!spec_.cache_path)
        throw DataError("cached backend requires cache_path");
      std::ifstream in(*spec_.cache_path, std::ios::binary);
      if (!in)
        throw DataError("cannot open cache \"" + *spec_.cache_path + "\"");
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        size_t pos = 0;
        for (int f = 0; f < 3; ++f) {
          size_t tab = line.find('\t', pos);
          if (tab == std::string::npos) break;
          fields.push_back(line.substr(pos, tab - pos));
          pos = tab + 1;
        }
        if (fields.size() != 3) continue;
        fields.push_back(line.substr(pos));
        cache_[cache_key(parse_lang(fields[0]), parse_lang(fields[1]),
                         fields[2])] = fields[3];
      }
      break;
    }
  }
}

std::vector<std::string> Translator::translate_batch(
    const TranslationBatch& batch) const {
  if (batch.src_lang == batch.tgt_lang &&
      spec_.kind != TranslatorKind::identity)
    throw DataError("translation batch with src_lang == tgt_lang");

  switch (spec_.kind) {
    case TranslatorKind::identity:
      return batch.lines;

    case TranslatorKind::dictionary: {
      std::vector<std::string> out;
      out.reserve(batch.lines.size());
      for (const auto& line : batch.lines) {
        std::string translated;
        size_t index = 0;
        for (const auto& token : split_tokens(line)) {
          if (!translated.empty()) translated += ' ';
          auto it = dictionary_.find(token);
          bool drop = spec_.noise > 0.0 &&
                      noise_uniform(spec_.seed, batch.src_lang,
                                    batch.tgt_lang, line, index) < spec_.noise;
          translated += (it != dictionary_.end() && !drop) ? it->second
                                                           : token;
          ++index;
        }
        out.push_back(std::move(translated));
      }
      return out;
    }

    case TranslatorKind::exec: {
      std::vector<std::string> out;
      out.reserve(batch.lines.size());
      const size_t chunk = size_t(std::max(1, spec_.batch_size));
      for (size_t start = 0; start < batch.lines.size(); start += chunk) {
        std::vector<std::string> lines(
            batch.lines.begin() + start,
            batch.lines.begin() +
                std::min(batch.lines.size(), start + chunk));
        auto translated = run_exec_chunk(*spec_.command, batch.src_lang,
                                         batch.tgt_lang, lines);
        out.insert(out.end(), translated.begin(), translated.end());
      }
      return out;
    }

    case TranslatorKind::cached: {
      std::vector<std::string> out;
      out.reserve(batch.lines.size());
      for (const auto& line : batch.lines) {
        auto it =
            cache_.find(cache_key(batch.src_lang, batch.tgt_lang, line));
        if (it == cache_.end())
          throw DataError("cache miss for sentence \"" + line + "\"");
        out.push_back(it->second);
      }
      return out;
    }
  }
  throw DataError("unreachable translator kind");
}

void build_cache(const DocumentStore& store, const TranslatorSpec& spec,
                 Lang src_lang, Lang tgt_lang, const std::string& cache_path) {
  if (spec.kind == TranslatorKind::cached)
    throw DataError("build_cache cannot run on a cached spec");
  Translator translator(spec);

  std::ofstream out(cache_path, std::ios::binary);
  if (!out) throw DataError("cannot write cache \"" + cache_path + "\"");
  out << "# translation cache\n";

  std::set<std::string> done;
  for (const auto& id : store.ids_of(src_lang)) {
    const Document& doc = store.at(id);
    TranslationBatch batch{src_lang, tgt_lang, {}};
    for (const auto& sentence : doc.sentences)
      if (done.insert(sentence).second) batch.lines.push_back(sentence);
    if (batch.lines.empty()) continue;
    std::vector<std::string> translated;
    try {
      translated = translator.translate_batch(batch);
    } catch (const DataError& e) {
      throw DataError("translating document \"" + id + "\": " + e.what());
    }
    for (size_t i = 0; i < batch.lines.size(); ++i)
      out << to_string(src_lang) << '\t' << to_string(tgt_lang) << '\t'
          << batch.lines[i] << '\t' << translated[i] << '\n';
  }
}

}  // namespace bitext
