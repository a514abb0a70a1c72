/*
 * Copyright 2026 The skillgrade Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <array>
#include <sstream>

#include "skillgrade/pipeline.hpp"
#include "skillgrade/text.hpp"

namespace skillgrade::app {

namespace {

namespace fs = std::filesystem;

constexpr unsigned char kPng[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00,
    0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x04, 0x00, 0x00, 0x00, 0xb5, 0x1c, 0x0c, 0x02, 0x00,
    0x00, 0x00, 0x0b, 0x49, 0x44, 0x41, 0x54, 0x78, 0xda, 0x63, 0x64, 0x60, 0x00, 0x00, 0x00, 0x06, 0x00,
    0x02, 0x30, 0x81, 0xd0, 0x2f, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

constexpr std::string_view kRequirements = R"(# Login
Registered users sign in with an email address and a password.
Five consecutive failed attempts lock the account for 15 minutes.
An unregistered email shows the message "Account not found".

# Flight search
Users search one-way flights by origin, destination and departure date.
The departure date cannot be in the past.
Results are sorted by departure time and show the fare in EUR.

# Booking
A booking holds between 1 and 9 passengers.
Each passenger needs a full name and a date of birth.
A confirmed booking shows a six-character booking reference.

# Payment
Payment accepts Visa and Mastercard.
An expired card is rejected with the message "Card expired".
)";

void write(const fs::path& path, std::string_view body) {
  fs::create_directories(path.parent_path());
  text::write_file_atomic(path, body);
}

void screenshot(const fs::path& dir, const std::string& name, std::string_view ocr) {
  write(dir / "screenshots" / name, std::string_view(reinterpret_cast<const char*>(kPng), sizeof(kPng)));
  write(dir / "screenshots" / (name + ".txt"), ocr);
}

void sub01(const fs::path& d) {
  write(d / "testcases.json", R"([
  {
    "case_id": "TC_LOGIN_001",
    "module_name": "login",
    "description": "Sign in with a registered email and the correct password",
    "steps": ["1. Open the login page", "2. Enter the registered email", "3. Enter the password", "4. Click Sign in"],
    "input_data": ["alice@example.com", "Secret#2024"],
    "expected_result": "The dashboard opens and greets Alice",
    "actual_result": "The dashboard opened with the greeting Hello Alice",
    "screenshot_refs": ["TC_LOGIN_001_20241109_153045.png"]
  },
  {
    "case_id": "TC_LOGIN_002",
    "module_name": "login",
    "description": "Unregistered email is refused",
    "steps": ["1. Open the login page", "2. Enter an unregistered email", "3. Click Sign in"],
    "input_data": ["nobody@example.com"],
    "expected_result": "The message Account not found is shown",
    "actual_result": "Account not found was shown under the form",
    "screenshot_refs": ["TC_LOGIN_002_20241109_153112.png"]
  },
  {
    "case_id": "TC_SEARCH_001",
    "module_name": "search",
    "description": "Past departure date is rejected",
    "steps": ["1. Open flight search", "2. Pick yesterday as departure date", "3. Click Search"],
    "input_data": ["BER", "LIS", "2024-11-08"],
    "expected_result": "The form reports that the date cannot be in the past",
    "actual_result": "Departure date cannot be in the past",
    "screenshot_refs": ["TC_SEARCH_001_20241109_154002.png"]
  },
  {
    "case_id": "TC_BOOKING_001",
    "module_name": "booking",
    "description": "Ten passengers exceed the booking limit",
    "steps": ["1. Select a flight", "2. Add ten passengers", "3. Click Continue"],
    "input_data": ["10"],
    "expected_result": "The form allows at most 9 passengers",
    "actual_result": "Maximum 9 passengers per booking",
    "screenshot_refs": ["TC_BOOKING_001_20241109_155230.png"]
  }
]
)");
  write(d / "scripts" / "test_login.py", R"(import pytest
from pages import LoginPage


def setup():
    global page
    page = LoginPage.open()


def teardown():
    page.close()


@pytest.mark.parametrize("email,password,expected", [
    ("alice@example.com", "Secret#2024", "Hello Alice"),
    ("nobody@example.com", "whatever", "Account not found"),
])
def test_login(email, password, expected):
    page.fill_email(email)
    page.fill_password(password)
    page.submit()
    assert expected in page.banner_text()
    page.capture("TC_LOGIN_001_20241109_153045.png")
)");
  write(d / "scripts" / "test_booking.py", R"(from pages import SearchPage, BookingPage


def setup():
    global search
    search = SearchPage.open()


def teardown():
    search.close()


def test_past_date():
    search.fill("BER", "LIS", "2024-11-08")
    search.submit()
    search.capture("TC_SEARCH_001_20241109_154002.png")


def test_passenger_limit():
    booking = BookingPage.from_search(search)
    booking.add_passengers(10)
    booking.capture("TC_BOOKING_001_20241109_155230.png")
)");
  screenshot(d, "TC_LOGIN_001_20241109_153045.png", "Dashboard\nHello Alice\n");
  screenshot(d, "TC_LOGIN_002_20241109_153112.png", "Sign in\nAccount not found\n");
  screenshot(d, "TC_SEARCH_001_20241109_154002.png", "Flight search\nDeparture date cannot be in the past\n");
  screenshot(d, "TC_BOOKING_001_20241109_155230.png", "Passengers\nMaximum 9 passengers per booking\n");
}

void sub02(const fs::path& d) {
  write(d / "testcases.csv",
        "case_id,module_name,description,steps,input_data,expected_result,actual_result,screenshot_refs\n"
        "TC_LOGIN_001,login,Valid sign in,1. Open login page|2. Enter credentials|3. Click Sign in,"
        "bob@example.com|Pa55word!,Dashboard is shown,Dashboard shown,TC_LOGIN_001_20241110_091500.png\n"
        "TC-LOGIN-2,login,Account lock after failed attempts,1. Enter a wrong password five times|2. Try again,"
        "bob@example.com|wrong,Account is locked for 15 minutes,Account locked,TC-LOGIN-2_1110.png\n"
        "TC_PAYMENT_001,payment,Expired card,1. Choose Visa|2. Enter an expired card|3. Pay,"
        "4111111111111111|01/20,Card expired is shown,Card expired,TC_PAYMENT_001_20241110_093010.png\n");
  write(d / "scripts" / "test_payment.py", R"(from pages import PaymentPage


def setup():
    global pay
    pay = PaymentPage.open()


def teardown():
    pay.close()


def test_expired_card():
    pay.choose("visa")
    pay.enter_card("4111111111111111", "01/20")
    pay.submit()
    pay.capture("TC_PAYMENT_001_20241110_093010.png")


def test_lockout():
    for attempt in range(5):
        pay.login("bob@example.com", "wrong")
    pay.capture("TC-LOGIN-2_1110.png")
)");
  screenshot(d, "TC_LOGIN_001_20241110_091500.png", "Dashboard\nWelcome back Bob\n");
  screenshot(d, "TC-LOGIN-2_1110.png", "Sign in\nAccount locked. Try again in 15 minutes\n");
  screenshot(d, "TC_PAYMENT_001_20241110_093010.png", "Payment\nCard expired\n");
}

void sub03(const fs::path& d) {
  write(d / "testcases.json", R"([
  {
    "case_id": "TC_SEARCH_001",
    "module_name": "search",
    "description": "One-way search sorted by departure",
    "steps": ["1. Open flight search", "2. Enter BER to LIS on 2025-03-01", "3. Click Search"],
    "input_data": ["BER", "LIS", "2025-03-01"],
    "expected_result": "Flights are listed by departure time with EUR fares",
    "actual_result": "",
    "screenshot_refs": ["TC_SEARCH_001_20241111_101500.png"]
  },
  {
    "case_id": "TC_BOOKING_001",
    "module_name": "booking",
    "description": "Booking reference after confirmation",
    "steps": ["1. Select a flight", "2. Add one passenger", "3. Confirm"],
    "input_data": ["Carol Smith", "1990-04-12"],
    "expected_result": "A six-character booking reference is shown",
    "actual_result": "Reference K7Q2ZP shown",
    "screenshot_refs": []
  }
]
)");
  write(d / "scripts" / "SearchTest.java", R"(import org.junit.jupiter.api.*;
import org.junit.jupiter.params.ParameterizedTest;
import org.junit.jupiter.params.provider.CsvSource;

public class SearchTest {
    private SearchPage page;

    @BeforeEach
    void setup() {
        page = SearchPage.open();
    }

    @AfterEach
    void teardown() {
        page.close();
    }

    @ParameterizedTest
    @CsvSource({"BER, LIS, 2025-03-01", "MUC, OPO, 2025-04-15"})
    void searchSorted(String from, String to, String date) {
        page.search(from, to, date);
        Assertions.assertTrue(page.isSortedByDeparture());
        page.capture("TC_SEARCH_001_20241111_101500.png");
    }
}
)");
  screenshot(d, "TC_SEARCH_001_20241111_101500.png", "Results\n08:15 BER-LIS 129 EUR\n11:40 BER-LIS 154 EUR\n");
}

void sub04(const fs::path& d) {
  write(d / "testcases.json", R"([
  {
    "case_id": "TC_BOOKING_001",
    "module_name": "checkout",
    "description": "Passenger without date of birth",
    "steps": ["Select a flight", "Add a passenger without date of birth", "Continue"],
    "input_data": ["Dan Brown"],
    "expected_result": "Date of birth is required",
    "actual_result": "Date of birth is required",
    "screenshot_refs": ["TC_BOOKING_001_20241112_140000.png"]
  },
  {
    "case_id": "TC_BOOKING_002",
    "module_name": "booking",
    "description": "Nine passengers are accepted",
    "steps": ["1. Select a flight", "2. Add nine passengers", "3. Continue"],
    "input_data": ["9"],
    "expected_result": "The passenger step completes",
    "actual_result": "Passenger step completed",
    "screenshot_refs": ["TC_BOOKING_002_20241112_140512.png"]
  }
]
)");
  write(d / "scripts" / "test_booking.py", R"(from pages import BookingPage


def setup():
    global booking
    booking = BookingPage.open()


def teardown():
    booking.close()


def test_missing_birth_date():
    booking.add_passenger("Dan Brown", None
    booking.submit()
    booking.capture("TC_BOOKING_001_20241112_140000.png")


def test_nine_passengers():
    booking.add_passengers(9)
    booking.capture("TC_BOOKING_002_20241112_140512.png")
)");
  screenshot(d, "TC_BOOKING_001_20241112_140000.png", "Passengers\nDate of birth is required\n");
  screenshot(d, "TC_BOOKING_002_20241112_140512.png", "Seats\n9 passengers\n");
}

void sub05(const fs::path& d) {
  write(d / "testcases.json", R"([
  {
    "case_id": "TC_PAYMENT_001",
    "module_name": "payment",
    "description": "Mastercard payment succeeds",
    "steps": ["1. Choose Mastercard", "2. Enter a valid card", "3. Pay"],
    "input_data": ["5555555555554444", "12/27"],
    "expected_result": "Payment confirmation is shown",
    "actual_result": "Payment confirmed",
    "screenshot_refs": ["TC_PAYMENT_001_20241332_120000.png"]
  },
  {
    "case_id": "TC_PAYMENT_002",
    "module_name": "payment",
    "description": "Unsupported card brand",
    "steps": ["1. Choose another brand", "2. Pay"],
    "input_data": ["378282246310005"],
    "expected_result": "Only Visa and Mastercard are offered",
    "actual_result": "Only Visa and Mastercard are offered",
    "screenshot_refs": ["TC_PAYMENT_002_20241113_121500.png", "TC_PAYMENT_002_summary.png"]
  },
  {
    "case_id": "TC_LOGIN_001",
    "module_name": "login",
    "description": "Sign in before paying",
    "steps": ["1. Open login", "2. Sign in"],
    "input_data": ["erin@example.com", "Erin!2024"],
    "expected_result": "Dashboard is shown",
    "actual_result": "Dashboard shown",
    "screenshot_refs": ["TC_LOGIN_001_20241113_115900.png"]
  }
]
)");
  write(d / "scripts" / "test_payment.py", R"(from pages import PaymentPage


def setup():
    global pay
    pay = PaymentPage.open()


@pytest.mark.parametrize("card,expiry", [("5555555555554444", "12/27"), ("378282246310005", "01/28")])
def test_payment(card, expiry):
    pay.enter_card(card, expiry)
    pay.submit()
    pay.capture("TC_PAYMENT_001_20241332_120000.png")
)");
  screenshot(d, "TC_PAYMENT_001_20241332_120000.png", "Payment\nPayment confirmed\n");
  screenshot(d, "TC_PAYMENT_002_20241113_121500.png", "Payment\nSelect Visa or Mastercard\n");
  screenshot(d, "TC_LOGIN_001_20241113_115900.png", "Dashboard\nHello Erin\n");
}

// Hypothetical human grades for the demo evaluation, per base category.
struct HumanGrade {
  const char* id;
  std::array<double, 6> scores;  // Basics, Coverage, Timestamp, Standardization, Adequacy, Completeness
};

constexpr HumanGrade kHumanGrades[] = {
    {"sub01", {24.5, 25.0, 39.0, 49.0, 23.0, 26.0}}, {"sub02", {21.0, 20.0, 26.0, 42.5, 20.0, 24.0}},
    {"sub03", {22.0, 18.0, 39.0, 45.0, 17.5, 19.5}}, {"sub04", {14.5, 22.0, 39.0, 37.0, 15.0, 26.0}},
    {"sub05", {18.0, 19.0, 26.0, 46.0, 19.0, 21.5}},
};

std::string human_scores_csv() {
  std::ostringstream out;
  out << "submission_id,category,score\n";
  for (const auto& g : kHumanGrades) {
    const auto& s = g.scores;
    const double code = s[0] + s[1] + s[2];
    const double cases = s[3] + s[4] + s[5];
    const std::pair<const char*, double> rows[] = {
        {"Basics", s[0]},          {"Coverage", s[1]},        {"Timestamp", s[2]},   {"Code Total", code},
        {"Standardization", s[3]}, {"Adequacy", s[4]},        {"Completeness", s[5]}, {"Test Case Total", cases},
        {"Total Score", code + cases},
    };
    for (const auto& [category, score] : rows)
      out << g.id << "," << category << "," << text::format_number(score) << "\n";
  }
  return out.str();
}

}  // namespace

void write_sample_workspace(const Workspace& ws) {
  write(ws.requirements_path(), kRequirements);
  sub01(ws.submission_dir("sub01"));
  sub02(ws.submission_dir("sub02"));
  sub03(ws.submission_dir("sub03"));
  sub04(ws.submission_dir("sub04"));
  sub05(ws.submission_dir("sub05"));
  write(ws.root() / "human_scores.csv", human_scores_csv());
  write(ws.root() / "manual_times.txt",
        "# Minutes and seconds a human grader spent per submission\n21:05.40\n19:48.12\n23:31.77\n20:16.03\n22:47.90\n");
}

}  // namespace skillgrade::app
