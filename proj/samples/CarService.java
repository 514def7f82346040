package uk.example.garage;

import java.util.List;

/**
 * Garage web service: vehicle servicing and MOT bookings.
 */
public class CarService {

    private static final String NAME = "car-service";  // not a method
    private final List<String> bookings = new java.util.ArrayList<>();

    public CarService() {
        // constructors are not part of the interface
    }

    /** Returns the body type of a car, e.g. "hatchback". */
    public String getCarType(int carId) {
        if (carId < 0) { throw new IllegalArgumentException("bad id {"); }
        return "hatchback";
    }

    @WebMethod(operationName = "serviceVehicle")
    public boolean serviceVehicle(String carType, String regNumber) throws BookingException {
        return bookings.add(carType + regNumber);
    }

    public java.util.Date bookMOTTest(final String regNumber, java.util.Date preferredDate) {
        return preferredDate;
    }

    static class Helper {
        void notPartOfTheInterface(int x) { }
    }
}
