// Validates JSON lines on stdin against a schema file.
//   qdyn basin --p 13 --emit json | qdyn_schema_check schemas/prime_record.schema.json

#include <fstream>
#include <iostream>
#include <string>

#include "json_schema.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: qdyn_schema_check SCHEMA < lines.jsonl\n";
        return 2;
    }
    std::ifstream in(argv[1]);
    if (!in) {
        std::cerr << "cannot open " << argv[1] << '\n';
        return 2;
    }
    const auto schema = schema::Json::parse(in);
    std::string line;
    std::size_t lineno = 0, bad = 0;
    while (std::getline(std::cin, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> errors;
        schema::Json value;
        try {
            value = schema::Json::parse(line);
        } catch (const std::exception& e) {
            errors.push_back(e.what());
        }
        if (errors.empty()) schema::validate(value, schema, errors);
        for (const auto& e : errors) std::cerr << "line " << lineno << ": " << e << '\n';
        bad += !errors.empty();
    }
    std::cout << lineno << " lines, " << bad << " invalid\n";
    return bad == 0 ? 0 : 1;
}
