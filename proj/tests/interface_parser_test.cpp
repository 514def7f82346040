// Copyright 2026 The codemeta Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "codemeta/interface_parser.hpp"

#include <gtest/gtest.h>

namespace codemeta {
namespace {

using Tokens = std::vector<std::string>;

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

TEST(DetectSourceType, ByExtensionIgnoringCase) {
  EXPECT_EQ(detect_source_type("CarService.java"), SourceType::java);
  EXPECT_EQ(detect_source_type("carservice.WSDL"), SourceType::wsdl);
  EXPECT_EQ(detect_source_type("dir/service.Xml"), SourceType::wsdl);
  EXPECT_EQ(error_of([] { detect_source_type("service.txt"); }), ErrorCode::UnsupportedFileType);
  EXPECT_EQ(error_of([] { detect_source_type("Makefile"); }), ErrorCode::UnsupportedFileType);
}

TEST(ParseJava, SingleMethodWithParameter) {
  const auto model = parse_java("class C { public String getCarType(int carId) { return \"x\"; } }", "C.java");
  EXPECT_EQ(model.interface_name, "C");
  EXPECT_EQ(model.source_type, SourceType::java);
  ASSERT_EQ(model.methods.size(), 1u);
  const auto& m = model.methods[0];
  EXPECT_EQ(m.name, "getCarType");
  EXPECT_EQ(m.tokens, (Tokens{"get", "car", "type"}));
  EXPECT_EQ(m.return_type, "String");
  ASSERT_EQ(m.parameters.size(), 1u);
  EXPECT_EQ(m.parameters[0].name, "carId");
  EXPECT_EQ(m.parameters[0].tokens, (Tokens{"car", "id"}));
  EXPECT_EQ(m.parameters[0].declared_type, "int");
}

TEST(ParseJava, EmptyClass) { EXPECT_TRUE(parse_java("class C { }", "C.java").methods.empty()); }

TEST(ParseJava, UnbalancedParenthesis) {
  EXPECT_EQ(error_of([] { parse_java("public int f(", "F.java"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { parse_java("class C { void f() { }", "C.java"); }), ErrorCode::ParseError);
}

TEST(ParseJava, NoClassDeclaration) {
  EXPECT_EQ(error_of([] { parse_java("int x = 3;", "X.java"); }), ErrorCode::ParseError);
}

TEST(ParseJava, SkipsConstructorsFieldsNestedTypesAndBodies) {
  const char* src = R"(
    package p;
    import java.util.*;
    // class Fake { void commented() {} }
    /* class Fake2 { void alsoCommented() {} } */
    @WebService(name = "Garage")
    public class Garage extends Base implements Api {
      private static final String NAME = "class Bogus { void s() {} }";
      private int counter = compute(3);
      private final Runnable r = new Runnable() { public void run() { } };
      private int[] numbers = {1, 2, 3};
      static { init(); }
      public Garage(int size) { this.size = size; }
      @Override
      public synchronized <T extends Comparable<T>> List<Map<String, T>> findAll(Map<String, List<T>> index, final T... keys) throws java.io.IOException {
        if (keys.length > 0) { return null; }
        char brace = '{';
        return null;
      }
      abstract void bookMOTTest(String regNumber, int values[]);
      class Inner { void innerMethod(int a) { } }
      enum Kind { A, B; void kindMethod() { } }
    }
    class Second { void ignored() {} }
  )";
  const auto model = parse_java(src, "Garage.java");
  EXPECT_EQ(model.interface_name, "Garage");
  ASSERT_EQ(model.methods.size(), 2u);

  EXPECT_EQ(model.methods[0].name, "findAll");
  EXPECT_EQ(model.methods[0].return_type, "List<Map<String, T>>");
  ASSERT_EQ(model.methods[0].parameters.size(), 2u);
  EXPECT_EQ(model.methods[0].parameters[0].name, "index");
  EXPECT_EQ(model.methods[0].parameters[0].declared_type, "Map<String, List<T>>");
  EXPECT_EQ(model.methods[0].parameters[1].name, "keys");
  EXPECT_EQ(model.methods[0].parameters[1].declared_type, "T...");

  EXPECT_EQ(model.methods[1].name, "bookMOTTest");
  EXPECT_EQ(model.methods[1].tokens, (Tokens{"book", "mot", "test"}));
  ASSERT_EQ(model.methods[1].parameters.size(), 2u);
  EXPECT_EQ(model.methods[1].parameters[1].declared_type, "int[]");
}

TEST(ParseJava, InterfaceDeclarations) {
  const auto model = parse_java(R"(
    public interface VehicleApi {
      String checkVehicle(String regNumber);
      default int count() { return 0; }
    })",
                                "VehicleApi.java");
  EXPECT_EQ(model.interface_name, "VehicleApi");
  ASSERT_EQ(model.methods.size(), 2u);
  EXPECT_EQ(model.methods[0].name, "checkVehicle");
  EXPECT_EQ(model.methods[1].name, "count");
}

TEST(ParseJava, OverloadsKeptByArity) {
  const auto model = parse_java(R"(class C {
      Car getCar() { return null; }
      Car getCar(int id) { return null; }
      Car getCar(String plate) { return null; }
    })",
                                "C.java");
  ASSERT_EQ(model.methods.size(), 2u);
  EXPECT_EQ(model.methods[0].parameters.size(), 0u);
  EXPECT_EQ(model.methods[1].parameters.size(), 1u);
  EXPECT_EQ(model.methods[1].parameters[0].name, "id");
}

TEST(ParseJava, DuplicateParameterNameIsAnError) {
  EXPECT_EQ(error_of([] { parse_java("class C { void f(int a, int a) {} }", "C.java"); }), ErrorCode::ParseError);
}

TEST(ParseJava, UnterminatedCommentOrString) {
  EXPECT_EQ(error_of([] { parse_java("class C { /* void f() {} }", "C.java"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { parse_java("class C { String s = \"abc; }", "C.java"); }), ErrorCode::ParseError);
}

TEST(ParseJava, SampleFile) {
  const auto model = parse_file(std::string(CODEMETA_SAMPLES_DIR) + "/CarService.java");
  ASSERT_EQ(model.methods.size(), 3u);
  EXPECT_EQ(model.methods[0].name, "getCarType");
  EXPECT_EQ(model.methods[1].name, "serviceVehicle");
  EXPECT_EQ(model.methods[2].name, "bookMOTTest");
}

constexpr const char* kVehicleWsdl = R"(<?xml version="1.0"?>
<definitions xmlns="http://schemas.xmlsoap.org/wsdl/" xmlns:tns="urn:v" name="V">
  <message name="CheckVehicleRequest"><part name="regNumber" type="xsd:string"/></message>
  <message name="CheckVehicleResponse"><part name="ok" type="xsd:boolean"/></message>
  <portType name="VehiclePort">
    <operation name="checkVehicle">
      <input message="tns:CheckVehicleRequest"/>
      <output message="tns:CheckVehicleResponse"/>
    </operation>
  </portType>
</definitions>)";

TEST(ParseWsdl, OperationWithInputParts) {
  const auto model = parse_wsdl(kVehicleWsdl, "v.wsdl");
  EXPECT_EQ(model.interface_name, "VehiclePort");
  EXPECT_EQ(model.source_type, SourceType::wsdl);
  ASSERT_EQ(model.methods.size(), 1u);
  EXPECT_EQ(model.methods[0].name, "checkVehicle");
  EXPECT_EQ(model.methods[0].return_type, "xsd:boolean");
  ASSERT_EQ(model.methods[0].parameters.size(), 1u);
  EXPECT_EQ(model.methods[0].parameters[0].name, "regNumber");
  EXPECT_EQ(model.methods[0].parameters[0].tokens, (Tokens{"reg", "number"}));
  EXPECT_EQ(model.methods[0].parameters[0].declared_type, "xsd:string");
}

TEST(ParseWsdl, PrefixAgnosticAndPartOrderKept) {
  const auto model = parse_file(std::string(CODEMETA_SAMPLES_DIR) + "/VehicleService.wsdl");
  ASSERT_EQ(model.methods.size(), 2u);
  ASSERT_EQ(model.methods[1].parameters.size(), 2u);
  EXPECT_EQ(model.methods[1].parameters[0].name, "regNumber");
  EXPECT_EQ(model.methods[1].parameters[1].name, "serviceType");
}

TEST(ParseWsdl, EmptyPortType) {
  EXPECT_TRUE(parse_wsdl("<definitions><portType name='P'/></definitions>", "p.wsdl").methods.empty());
}

TEST(ParseWsdl, Errors) {
  EXPECT_EQ(error_of([] { parse_wsdl("<definitions><message name='m'/></definitions>", "x.xml"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { parse_wsdl("<definitions><portType name='P'>", "x.wsdl"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_of([] { parse_wsdl("not xml at all", "x.wsdl"); }), ErrorCode::ParseError);
}

TEST(ParseWsdl, DanglingMessageReferenceIsNamed) {
  try {
    parse_wsdl(R"(<definitions><portType name="P"><operation name="op">
                  <input message="tns:Missing"/></operation></portType></definitions>)",
               "x.wsdl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("tns:Missing"), std::string::npos) << e.what();
  }
}

TEST(ParseWsdl, AttributeOrderDoesNotMatter) {
  const char* reordered = R"(<?xml version="1.0"?>
<definitions name="V" xmlns:tns="urn:v" xmlns="http://schemas.xmlsoap.org/wsdl/">
  <message name="CheckVehicleRequest"><part type="xsd:string" name="regNumber"/></message>
  <message name="CheckVehicleResponse"><part type="xsd:boolean" name="ok"/></message>
  <portType name="VehiclePort">
    <operation name="checkVehicle">
      <input message="tns:CheckVehicleRequest"/>
      <output message="tns:CheckVehicleResponse"/>
    </operation>
  </portType>
</definitions>)";
  EXPECT_EQ(parse_wsdl(kVehicleWsdl, "v.wsdl"), parse_wsdl(reordered, "v.wsdl"));
}

TEST(ExtractKeywords, UnionOfNameTokens) {
  const auto model = parse_java("class C { String getCarType(int carId) { return null; } }", "C.java");
  EXPECT_EQ(extract_keywords(model), (std::set<std::string>{"get", "car", "type", "id"}));
  EXPECT_TRUE(extract_keywords(InterfaceModel{}).empty());
  const auto dup = parse_java("class C { Car getCar() { return null; } void setCar() {} }", "C.java");
  EXPECT_EQ(extract_keywords(dup), (std::set<std::string>{"get", "set", "car"}));
}

TEST(ExtractKeywords, DigitRunsExcluded) {
  const auto model = parse_java("class C { void parseXMLFile2(int v2) {} }", "C.java");
  EXPECT_EQ(extract_keywords(model), (std::set<std::string>{"parse", "xml", "file", "v"}));
}

TEST(InterfaceModelInvariant, TokensMatchTokenizer) {
  for (const auto* file : {"/CarService.java", "/VehicleService.wsdl"}) {
    const auto model = parse_file(std::string(CODEMETA_SAMPLES_DIR) + file);
    std::set<std::string> all_tokens;
    for (const auto& m : model.methods) {
      EXPECT_EQ(m.tokens, tokenize(m.name));
      all_tokens.insert(m.tokens.begin(), m.tokens.end());
      for (const auto& p : m.parameters) {
        EXPECT_EQ(p.tokens, tokenize(p.name));
        all_tokens.insert(p.tokens.begin(), p.tokens.end());
      }
    }
    for (const auto& k : extract_keywords(model)) EXPECT_TRUE(all_tokens.count(k)) << k;
  }
}

}  // namespace
}  // namespace codemeta
