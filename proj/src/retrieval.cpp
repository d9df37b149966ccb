#include "lacr/retrieval.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

namespace lacr {

namespace fs = std::filesystem;

std::string sanitize_component(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out;
}

std::string pair_directory_name(const std::string& factor_a, const std::string& factor_b) {
    return sanitize_component(factor_a) + "__" + sanitize_component(factor_b);
}

PairQuery make_pair_query(const std::string& factor_a, const std::string& factor_b,
                          const std::string& query_template) {
    std::string query = query_template;
    auto replace_all = [&query](const std::string& from, const std::string& to) {
        std::size_t pos = 0;
        while ((pos = query.find(from, pos)) != std::string::npos) {
            query.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("{a}", factor_a);
    replace_all("{b}", factor_b);
    return {factor_a, factor_b, query};
}

namespace {

nlohmann::json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return nlohmann::json::parse(in);
}

std::string kind_name(DocKind kind) {
    return kind == DocKind::kFullText ? "full_text" : "abstract";
}

DocKind kind_from_name(const std::string& name) {
    if (name == "full_text") return DocKind::kFullText;
    if (name == "abstract") return DocKind::kAbstract;
    throw std::invalid_argument("unknown document kind: " + name);
}

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

FixtureTitleSearch::FixtureTitleSearch(std::string directory)
    : directory_(std::move(directory)) {}

std::vector<TitleHit> FixtureTitleSearch::search(const PairQuery& query, int k) {
    const fs::path path =
        fs::path(directory_) / pair_directory_name(query.factor_a, query.factor_b) / "titles.json";
    if (!fs::exists(path)) return {};
    std::vector<TitleHit> hits;
    for (const auto& entry : read_json_file(path)) {
        TitleHit hit{entry.at("rank").get<int>(), entry.at("title").get<std::string>(),
                     entry.value("id", ""), entry.value("full_text_available", false)};
        hits.push_back(std::move(hit));
        if (static_cast<int>(hits.size()) >= k) break;
    }
    return hits;
}

FixtureDocumentFetch::FixtureDocumentFetch(const std::string& directory) {
    const fs::path path = fs::path(directory) / "docs.json";
    if (!fs::exists(path)) return;
    for (const auto& [id, record] : read_json_file(path).items()) documents_[id] = record;
}

std::optional<DocumentRecord> FixtureDocumentFetch::fetch(const TitleHit& hit) {
    auto it = documents_.find(hit.id);
    if (it == documents_.end()) return std::nullopt;
    const nlohmann::json& record = it->second;
    DocumentRecord out;
    out.id = hit.id;
    out.title = record.value("title", hit.title);
    if (record.contains("full_text") && !record.at("full_text").get<std::string>().empty()) {
        out.kind = DocKind::kFullText;
        out.text = record.at("full_text").get<std::string>();
    } else if (record.contains("abstract") && !record.at("abstract").get<std::string>().empty()) {
        out.kind = DocKind::kAbstract;
        out.text = record.at("abstract").get<std::string>();
    } else {
        return std::nullopt;
    }
    return out;
}

HttpTitleSearch::HttpTitleSearch(std::string endpoint, std::string api_key)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)) {}

HttpTitleSearch HttpTitleSearch::from_env() {
    const char* endpoint = std::getenv("LACR_SEARCH_ENDPOINT");
    const char* key = std::getenv("LACR_SEARCH_API_KEY");
    if (!endpoint || !*endpoint)
        throw std::runtime_error(
            "LACR_SEARCH_ENDPOINT is not set; use --offline with a fixture directory");
    return HttpTitleSearch(endpoint, key ? key : "");
}

std::vector<TitleHit> HttpTitleSearch::search(const PairQuery& query, int k) {
    httplib::Client client(endpoint_);
    client.set_read_timeout(60, 0);
    httplib::Params params{{"engine", "google_scholar"},
                           {"q", query.query},
                           {"num", std::to_string(k)},
                           {"api_key", api_key_}};
    auto res = client.Get("/search", params, httplib::Headers{});
    if (!res || res->status != 200)
        throw std::runtime_error("title search failed for query: " + query.query);
    std::vector<TitleHit> hits;
    const nlohmann::json payload = nlohmann::json::parse(res->body);
    for (const auto& entry : payload.value("organic_results", nlohmann::json::array())) {
        TitleHit hit;
        hit.rank = static_cast<int>(hits.size()) + 1;
        hit.title = entry.value("title", "");
        if (hit.title.empty()) continue;
        hits.push_back(std::move(hit));
        if (static_cast<int>(hits.size()) >= k) break;
    }
    return hits;
}

HttpDocumentFetch::HttpDocumentFetch(std::string endpoint) : endpoint_(std::move(endpoint)) {}

HttpDocumentFetch HttpDocumentFetch::from_env() {
    const char* endpoint = std::getenv("LACR_EUTILS_ENDPOINT");
    return HttpDocumentFetch(endpoint && *endpoint ? endpoint
                                                   : "https://eutils.ncbi.nlm.nih.gov");
}

namespace {

std::string strip_tags(const std::string& xml) {
    std::string text = std::regex_replace(xml, std::regex("<[^>]*>"), " ");
    text = std::regex_replace(text, std::regex("&lt;"), "<");
    text = std::regex_replace(text, std::regex("&gt;"), ">");
    text = std::regex_replace(text, std::regex("&amp;"), "&");
    text = std::regex_replace(text, std::regex("[ \t]+"), " ");
    return text;
}

std::optional<std::string> first_id(const std::string& esearch_xml) {
    std::smatch match;
    if (std::regex_search(esearch_xml, match, std::regex("<Id>([0-9]+)</Id>")))
        return match[1].str();
    return std::nullopt;
}

}  // namespace

std::optional<DocumentRecord> HttpDocumentFetch::fetch(const TitleHit& hit) {
    httplib::Client client(endpoint_);
    client.set_read_timeout(60, 0);
    const std::string term = hit.title + "[Title]";

    auto esearch = [&](const std::string& db) -> std::optional<std::string> {
        httplib::Params params{{"db", db}, {"term", term}, {"retmax", "1"}};
        auto res = client.Get("/entrez/eutils/esearch.fcgi", params, httplib::Headers{});
        if (!res || res->status != 200) return std::nullopt;
        return first_id(res->body);
    };
    auto efetch = [&](const std::string& db, const std::string& id,
                      const std::string& rettype) -> std::optional<std::string> {
        httplib::Params params{{"db", db}, {"id", id}, {"rettype", rettype}, {"retmode", "xml"}};
        auto res = client.Get("/entrez/eutils/efetch.fcgi", params, httplib::Headers{});
        if (!res || res->status != 200 || res->body.empty()) return std::nullopt;
        std::string text = strip_tags(res->body);
        if (text.find_first_not_of(" \n\r\t") == std::string::npos) return std::nullopt;
        return text;
    };

    // Full text first, abstract fallback.
    if (auto pmc_id = esearch("pmc")) {
        if (auto text = efetch("pmc", *pmc_id, "full")) {
            return DocumentRecord{"PMC" + *pmc_id, hit.title, DocKind::kFullText, *text, iso_now()};
        }
    }
    if (auto pmid = esearch("pubmed")) {
        if (auto text = efetch("pubmed", *pmid, "abstract")) {
            return DocumentRecord{"PMID" + *pmid, hit.title, DocKind::kAbstract, *text, iso_now()};
        }
    }
    return std::nullopt;
}

std::vector<TitleHit> search_titles(TitleSearchClient& client, const PairQuery& query, int k,
                                    int attempts, int backoff_ms, std::vector<std::string>* flags) {
    if (k < 1) throw std::invalid_argument("title count must be >= 1");
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        try {
            auto hits = client.search(query, k);
            if (static_cast<int>(hits.size()) > k) hits.resize(k);
            return hits;
        } catch (const std::exception& e) {
            if (attempt == attempts) {
                if (flags) flags->push_back("search-unavailable: " + std::string(e.what()));
                return {};
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms * attempt));
        }
    }
    return {};
}

std::vector<DocumentRecord> fetch_documents(DocumentFetchClient& client,
                                            const std::vector<TitleHit>& hits, int cap,
                                            std::vector<std::string>* flags) {
    if (cap < 1) throw std::invalid_argument("document cap must be >= 1");
    std::vector<DocumentRecord> records;
    for (const auto& hit : hits) {
        if (static_cast<int>(records.size()) >= cap) break;
        try {
            if (auto record = client.fetch(hit)) records.push_back(std::move(*record));
        } catch (const std::exception& e) {
            if (flags)
                flags->push_back("fetch-failed: " + hit.title + " (" + std::string(e.what()) + ")");
        }
    }
    if (records.empty() && !hits.empty() && flags) flags->push_back("all-documents-unavailable");
    return records;
}

nlohmann::json CorpusManifest::to_json() const {
    nlohmann::json out = {{"pairs", nlohmann::json::object()}};
    for (const auto& [key, entry] : pairs) {
        nlohmann::json docs = nlohmann::json::array();
        for (const auto& doc : entry.documents)
            docs.push_back(
                {{"id", doc.id}, {"title", doc.title}, {"kind", kind_name(doc.kind)}});
        out["pairs"][key] = {{"factor_a", entry.factor_a}, {"factor_b", entry.factor_b},
                             {"query", entry.query},       {"documents", docs},
                             {"complete", entry.complete}, {"flags", entry.flags}};
    }
    return out;
}

CorpusManifest CorpusManifest::from_json(const nlohmann::json& value) {
    CorpusManifest manifest;
    for (const auto& [key, raw] : value.at("pairs").items()) {
        PairCorpusEntry entry;
        entry.factor_a = raw.at("factor_a").get<std::string>();
        entry.factor_b = raw.at("factor_b").get<std::string>();
        entry.query = raw.at("query").get<std::string>();
        entry.complete = raw.at("complete").get<bool>();
        entry.flags = raw.value("flags", std::vector<std::string>{});
        for (const auto& doc : raw.at("documents"))
            entry.documents.push_back({doc.at("id").get<std::string>(),
                                       doc.at("title").get<std::string>(),
                                       kind_from_name(doc.at("kind").get<std::string>())});
        manifest.pairs[key] = std::move(entry);
    }
    return manifest;
}

namespace {

void write_pair_entry(const fs::path& pair_dir, const PairCorpusEntry& entry) {
    fs::create_directories(pair_dir);
    CorpusManifest single;
    single.pairs[pair_dir.filename().string()] = entry;
    std::ofstream out(pair_dir / "manifest.json", std::ios::binary);
    out << single.to_json()["pairs"][pair_dir.filename().string()].dump(2) << "\n";
}

std::optional<PairCorpusEntry> read_pair_entry(const fs::path& pair_dir) {
    const fs::path path = pair_dir / "manifest.json";
    if (!fs::exists(path)) return std::nullopt;
    const nlohmann::json raw = read_json_file(path);
    CorpusManifest wrapper =
        CorpusManifest::from_json(nlohmann::json{{"pairs", {{pair_dir.filename().string(), raw}}}});
    return wrapper.pairs.begin()->second;
}

}  // namespace

CorpusManifest build_corpus(TitleSearchClient& search, DocumentFetchClient& fetch,
                            const std::vector<std::pair<std::string, std::string>>& pairs,
                            const CorpusConfig& config) {
    fs::create_directories(config.directory);
    CorpusManifest manifest;

    for (const auto& [factor_a, factor_b] : pairs) {
        const std::string dir_name = pair_directory_name(factor_a, factor_b);
        const fs::path pair_dir = fs::path(config.directory) / dir_name;

        if (auto existing = read_pair_entry(pair_dir); existing && existing->complete) {
            manifest.pairs[dir_name] = *existing;
            continue;
        }

        PairCorpusEntry entry;
        entry.factor_a = factor_a;
        entry.factor_b = factor_b;
        const PairQuery query = make_pair_query(factor_a, factor_b, config.query_template);
        entry.query = query.query;

        const auto hits = search_titles(search, query, config.titles, config.search_attempts,
                                        config.backoff_ms, &entry.flags);
        const auto records =
            fetch_documents(fetch, hits, config.document_cap, &entry.flags);

        fs::create_directories(pair_dir);
        for (const auto& record : records) {
            entry.documents.push_back({record.id, record.title, record.kind});
            std::ofstream doc_out(pair_dir / ("doc_" + sanitize_component(record.id) + ".txt"),
                                  std::ios::binary);
            doc_out << record.text;
        }
        // A search outage leaves the pair resumable; an empty pool from a
        // working search is a final answer.
        entry.complete = std::none_of(entry.flags.begin(), entry.flags.end(),
                                      [](const std::string& flag) {
                                          return flag.rfind("search-unavailable", 0) == 0;
                                      });

        write_pair_entry(pair_dir, entry);
        manifest.pairs[dir_name] = std::move(entry);
    }

    std::ofstream out(fs::path(config.directory) / "manifest.json", std::ios::binary);
    out << manifest.to_json().dump(2) << "\n";
    return manifest;
}

CorpusManifest load_corpus_manifest(const std::string& directory) {
    return CorpusManifest::from_json(read_json_file(fs::path(directory) / "manifest.json"));
}

std::vector<KnowledgeBase> load_pair_documents(const std::string& directory,
                                               const std::string& factor_a,
                                               const std::string& factor_b, int cap) {
    const std::string dir_name = pair_directory_name(factor_a, factor_b);
    const fs::path pair_dir = fs::path(directory) / dir_name;
    auto entry = read_pair_entry(pair_dir);
    if (!entry) return {};
    std::vector<KnowledgeBase> out;
    for (const auto& doc : entry->documents) {
        if (static_cast<int>(out.size()) >= cap) break;
        const fs::path doc_path = pair_dir / ("doc_" + sanitize_component(doc.id) + ".txt");
        std::ifstream in(doc_path, std::ios::binary);
        if (!in) {
            std::cerr << "warning: manifest references missing document " << doc_path << "\n";
            continue;
        }
        std::ostringstream text;
        text << in.rdbuf();
        out.push_back(KnowledgeBase::document(doc.id, kind_name(doc.kind), text.str()));
    }
    return out;
}

}  // namespace lacr
