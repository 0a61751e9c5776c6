#include "report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace pcheb::report {

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<long, int> prime_power(long q) {
    if (q < 2) throw std::invalid_argument("q must be a prime power >= 2, got " + std::to_string(q));
    long p = 2;
    while (p * p <= q && q % p) ++p;
    if (q % p) p = q;
    int f = 0;
    long r = q;
    while (r % p == 0) {
        r /= p;
        ++f;
    }
    if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return {p, f};
}

json envelope(const std::string& command, const json& config, const std::vector<std::string>& inputs,
              json result, const std::string& status) {
    std::string digest_src = config.dump();
    for (auto& s : inputs) digest_src += '\0' + s;
    json doc;
    doc["schema"] = "pcheb/1";
    doc["command"] = command;
    doc["config"] = config;
    doc["input_sha256"] = sha256_hex(digest_src);
    doc["status"] = status;
    doc["result"] = std::move(result);
    doc["timestamp"] = utc_timestamp();
    return doc;
}

void emit(const json& doc, const std::string& path, bool pretty) {
    std::string text = pretty ? doc.dump(2) : doc.dump();
    text += '\n';
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

}  // namespace pcheb::report
