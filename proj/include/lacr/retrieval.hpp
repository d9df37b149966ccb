#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lacr/kb.hpp"

namespace lacr {

struct PairQuery {
    std::string factor_a;
    std::string factor_b;
    std::string query;  // literal search string, default "<a> and <b>"
};

struct TitleHit {
    int rank = 0;  // contiguous from 1, service order
    std::string title;
    std::string id;  // service identifier when available
    bool full_text_available = false;
};

enum class DocKind { kFullText, kAbstract };

struct DocumentRecord {
    std::string id;
    std::string title;
    DocKind kind = DocKind::kAbstract;
    std::string text;
    std::string retrieved_at;  // ISO-8601, empty for fixture replays
};

class TitleSearchClient {
public:
    virtual ~TitleSearchClient() = default;
    virtual std::vector<TitleHit> search(const PairQuery& query, int k) = 0;
};

class DocumentFetchClient {
public:
    virtual ~DocumentFetchClient() = default;
    // Full text preferred, abstract fallback; nullopt when unavailable.
    virtual std::optional<DocumentRecord> fetch(const TitleHit& hit) = 0;
};

// Offline clients reading a recorded fixture tree:
//   <dir>/<A>__<B>/titles.json   ranked [{rank,title,id,full_text_available}]
//   <dir>/docs.json              {id: {title, full_text?, abstract?}}
class FixtureTitleSearch : public TitleSearchClient {
public:
    explicit FixtureTitleSearch(std::string directory);
    std::vector<TitleHit> search(const PairQuery& query, int k) override;

private:
    std::string directory_;
};

class FixtureDocumentFetch : public DocumentFetchClient {
public:
    explicit FixtureDocumentFetch(const std::string& directory);
    std::optional<DocumentRecord> fetch(const TitleHit& hit) override;

private:
    std::map<std::string, nlohmann::json> documents_;
};

// Scholarly title search over HTTP (SerpApi-style payload). Endpoint/key via
// LACR_SEARCH_ENDPOINT / LACR_SEARCH_API_KEY.
class HttpTitleSearch : public TitleSearchClient {
public:
    HttpTitleSearch(std::string endpoint, std::string api_key);
    static HttpTitleSearch from_env();
    std::vector<TitleHit> search(const PairQuery& query, int k) override;

private:
    std::string endpoint_;
    std::string api_key_;
};

// Biomedical document fetch via an E-utilities-style service: full text from
// the full-text database first, abstract fallback. Base URL via
// LACR_EUTILS_ENDPOINT.
class HttpDocumentFetch : public DocumentFetchClient {
public:
    explicit HttpDocumentFetch(std::string endpoint);
    static HttpDocumentFetch from_env();
    std::optional<DocumentRecord> fetch(const TitleHit& hit) override;

private:
    std::string endpoint_;
};

struct ManifestDocument {
    std::string id;
    std::string title;
    DocKind kind = DocKind::kAbstract;
};

struct PairCorpusEntry {
    std::string factor_a;
    std::string factor_b;
    std::string query;
    std::vector<ManifestDocument> documents;  // title-rank order
    bool complete = false;
    std::vector<std::string> flags;
};

struct CorpusManifest {
    std::map<std::string, PairCorpusEntry> pairs;  // keyed by pair directory name

    nlohmann::json to_json() const;
    static CorpusManifest from_json(const nlohmann::json& value);
};

struct CorpusConfig {
    std::string directory;
    int titles = 20;
    int document_cap = 10;
    std::string query_template = "{a} and {b}";
    int search_attempts = 3;
    int backoff_ms = 250;  // 0 in tests
};

std::string sanitize_component(const std::string& name);
std::string pair_directory_name(const std::string& factor_a, const std::string& factor_b);
PairQuery make_pair_query(const std::string& factor_a, const std::string& factor_b,
                          const std::string& query_template);

// At most k hits in service rank order; retries with backoff, then an empty
// flagged result.
std::vector<TitleHit> search_titles(TitleSearchClient& client, const PairQuery& query, int k,
                                    int attempts = 3, int backoff_ms = 250,
                                    std::vector<std::string>* flags = nullptr);

// Walks hits in rank order, skipping unavailable titles, until `cap` records.
std::vector<DocumentRecord> fetch_documents(DocumentFetchClient& client,
                                            const std::vector<TitleHit>& hits, int cap,
                                            std::vector<std::string>* flags = nullptr);

// Search + fetch + persist for every pair; pairs already complete on disk are
// skipped, so reruns over a complete corpus make no service calls.
CorpusManifest build_corpus(TitleSearchClient& search, DocumentFetchClient& fetch,
                            const std::vector<std::pair<std::string, std::string>>& pairs,
                            const CorpusConfig& config);

CorpusManifest load_corpus_manifest(const std::string& directory);

// Stored documents for one pair as document knowledge bases, manifest order,
// at most `cap`.
std::vector<KnowledgeBase> load_pair_documents(const std::string& directory,
                                               const std::string& factor_a,
                                               const std::string& factor_b, int cap);

}  // namespace lacr
